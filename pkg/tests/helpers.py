"""Shared builders for test corpora and annotation sets."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from verseval.annotations import LABELS, AnnotationSet, VerseAnnotation, threshold_labels
from verseval.corpus import TranslationText

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def probs_for(labels, hi: float = 0.9, lo: float = 0.1) -> tuple[float, ...]:
    """Probability vector that thresholds (at 0.5) to exactly ``labels``."""
    return tuple(hi if L in labels else lo for L in LABELS)


def unit_vector(dim: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    v = rng.normal(size=dim)
    return v / np.linalg.norm(v)


def make_set(tid: str, chapter_labelsets, dim: int = 4, threshold: float = 0.5,
             embeddings=None, polarities=None) -> AnnotationSet:
    """Annotation set from a list of chapters, each a list of label sets.

    ``embeddings``/``polarities`` mirror the same nesting when given;
    otherwise embeddings are seeded unit vectors and polarity is absent.
    """
    entries = {}
    for c, chapter in enumerate(chapter_labelsets, start=1):
        for i, labels in enumerate(chapter, start=1):
            if embeddings is not None:
                emb = np.asarray(embeddings[c - 1][i - 1], dtype=np.float64)
                emb = emb / np.linalg.norm(emb)
            else:
                emb = unit_vector(dim, seed=c * 1000 + i)
            pol = polarities[c - 1][i - 1] if polarities is not None else None
            probs = probs_for(labels)
            entries[(c, i)] = VerseAnnotation(
                translation_id=tid,
                chapter=c,
                index=i,
                probs=probs,
                labels=threshold_labels(probs, threshold),
                embedding=emb,
                external_polarity=pol,
            )
    return AnnotationSet(tid, threshold, dim, entries)


def make_text(tid: str, verse_counts, word: str = "verse") -> TranslationText:
    """Synthetic translation with the given verse count per chapter."""
    chapters = [
        [f"{word} {tid} {c}:{i}" for i in range(1, n + 1)]
        for c, n in enumerate(verse_counts, start=1)
    ]
    return TranslationText.from_chapters(tid, chapters)
