"""Tokenization, stopword removal and top-k n-gram tables.

Tokens are lowercased and split on non-alphanumeric boundaries, keeping
apostrophes inside words ("mid-autumn's" -> mid, autumn's).  N-gram
windows never cross verse boundaries, and tables order by (count desc,
tokens asc) so top-k is deterministic.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .annotations import AnnotationSet, check_labels
from .corpus import Verse
from .errors import MetricError

# word chars minus underscore; ' and the typographic apostrophe join pieces
TOKEN_RE = re.compile(r"[^\W_]+(?:['’][^\W_]+)*", re.UNICODE)


@dataclass(frozen=True)
class TokenSequence:
    """Lowercased, stopword-free tokens of one verse."""

    key: tuple[int, int]
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class NgramTable:
    """Ranked (token tuple, count) entries for one n and optional label."""

    n: int
    entries: tuple[tuple[tuple[str, ...], int], ...]
    condition: str | None = None


def load_stopwords(path=None) -> frozenset[str]:
    """Read a stopword file (one token per line, '#' comments); with no
    path the bundled English list is used."""
    if path is None:
        text = resources.files("verseval").joinpath("data/stopwords_en.txt").read_text(
            encoding="utf-8"
        )
    else:
        text = Path(path).read_text(encoding="utf-8-sig")
    words = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip().lower()
        if line:
            words.add(line)
    return frozenset(words)


def tokenize(verse: Verse, stopwords: frozenset[str] = frozenset()) -> TokenSequence:
    """Tokenize one verse and drop stopwords; may yield an empty sequence."""
    tokens = tuple(
        t for t in TOKEN_RE.findall(verse.text.lower()) if t not in stopwords
    )
    return TokenSequence(key=(verse.chapter, verse.index), tokens=tokens)


def _count_windows(sequences, n: int) -> Counter:
    counts: Counter = Counter()
    for seq in sequences:
        tokens = seq.tokens
        for i in range(len(tokens) - n + 1):
            counts[tokens[i : i + n]] += 1
    return counts


def _top_entries(counts: Counter, k: int):
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
    return tuple(ranked[:k])


def extract_topk(sequences, n: int, k: int) -> NgramTable:
    """Top-k n-grams over all token sequences (contiguous windows within
    each verse).  Fewer than k distinct n-grams yields a shorter table."""
    if n not in (2, 3):
        raise MetricError(f"n must be 2 or 3, got {n}")
    if k < 1:
        raise MetricError(f"k must be >= 1, got {k}")
    return NgramTable(n=n, entries=_top_entries(_count_windows(sequences, n), k))


def sentiment_topk(sequences, annotations: AnnotationSet, label: str,
                   n: int, k: int) -> NgramTable:
    """Top-k n-grams restricted to verses predicted to carry ``label``."""
    check_labels({label})
    if n not in (2, 3):
        raise MetricError(f"n must be 2 or 3, got {n}")
    if k < 1:
        raise MetricError(f"k must be >= 1, got {k}")
    selected = [
        seq for seq in sequences
        if seq.key in annotations.entries and label in annotations.entries[seq.key].labels
    ]
    return NgramTable(
        n=n, entries=_top_entries(_count_windows(selected, n), k), condition=label
    )
