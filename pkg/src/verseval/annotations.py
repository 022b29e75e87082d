"""Per-verse sentiment/embedding annotations and their interchange format.

Annotations are produced outside this package (by any model runner that
honors the interchange format) and validated here.  The label universe is
fixed: nine sentiments, in the canonical order below, which also defines
probability-vector indices 0..8.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import TranslationText
from .errors import AnnotationError

#: Canonical label universe; index in this tuple == index in a probs vector.
LABELS: tuple[str, ...] = (
    "optimistic",
    "thankful",
    "empathetic",
    "pessimistic",
    "anxious",
    "sad",
    "annoyed",
    "denial",
    "joking",
)

LABEL_INDEX: dict[str, int] = {name: i for i, name in enumerate(LABELS)}

FORMAT_VERSION = "1"


def format_real(x: float) -> str:
    """Render a real with up to 9 significant digits (interchange format)."""
    return format(float(x), ".9g")


def check_labels(labels) -> frozenset[str]:
    labels = frozenset(labels)
    unknown = labels - set(LABELS)
    if unknown:
        raise AnnotationError(f"unknown sentiment labels: {sorted(unknown)}")
    return labels


def threshold_labels(probs, threshold: float) -> frozenset[str]:
    """Labels whose probability is >= threshold (inclusive boundary)."""
    probs = list(probs)
    if len(probs) != len(LABELS):
        raise AnnotationError(f"expected {len(LABELS)} probabilities, got {len(probs)}")
    for i, p in enumerate(probs):
        if not (isinstance(p, (int, float)) and math.isfinite(p) and 0.0 <= p <= 1.0):
            raise AnnotationError(
                f"probability for {LABELS[i]!r} out of range [0,1]: {p!r}"
            )
    if not (isinstance(threshold, (int, float)) and 0.0 < threshold < 1.0):
        raise AnnotationError(f"threshold out of range (0,1): {threshold!r}")
    return frozenset(L for L, p in zip(LABELS, probs) if p >= threshold)


@dataclass(frozen=True, eq=False)
class VerseAnnotation:
    """Annotation for one verse: probabilities, thresholded labels, a unit
    embedding, and an optional externally supplied polarity in [-1, 1]."""

    translation_id: str
    chapter: int
    index: int
    probs: tuple[float, ...]
    labels: frozenset[str]
    embedding: np.ndarray
    external_polarity: float | None = None

    @property
    def key(self) -> tuple[int, int]:
        return (self.chapter, self.index)


class AnnotationSet:
    """All verse annotations of one translation under one threshold.

    Embeddings are L2-normalized at construction so cosine similarity
    reduces to a dot product downstream; ``normalized`` records this.
    """

    def __init__(self, translation_id: str, threshold: float, dimension: int,
                 entries: dict[tuple[int, int], VerseAnnotation],
                 normalized: bool = True):
        if not (0.0 < threshold < 1.0):
            raise AnnotationError(f"threshold out of range (0,1): {threshold!r}")
        if dimension <= 0:
            raise AnnotationError(f"embedding dimension must be positive: {dimension}")
        self.translation_id = translation_id
        self.threshold = float(threshold)
        self.dimension = int(dimension)
        self.entries = dict(entries)
        self.normalized = bool(normalized)
        for key, ann in self.entries.items():
            if ann.key != key:
                raise AnnotationError(f"entry keyed {key} carries {ann.key}")
            if ann.embedding.shape != (self.dimension,):
                raise AnnotationError(
                    f"({ann.chapter},{ann.index}): dimension mismatch, "
                    f"embedding has {ann.embedding.shape[0]} dims, set has {self.dimension}"
                )

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def num_chapters(self) -> int:
        return max((c for c, _ in self.entries), default=0)

    def chapter_annotations(self, chapter: int) -> list[VerseAnnotation]:
        """Annotations of one chapter in ascending verse order."""
        if not 1 <= chapter <= self.num_chapters:
            raise AnnotationError(
                f"chapter {chapter} out of range 1..{self.num_chapters}"
            )
        keys = sorted(k for k in self.entries if k[0] == chapter)
        return [self.entries[k] for k in keys]

    def get(self, chapter: int, index: int) -> VerseAnnotation:
        try:
            return self.entries[(chapter, index)]
        except KeyError:
            raise AnnotationError(
                f"no annotation for ({chapter},{index}) in {self.translation_id!r}"
            ) from None


def _parse_header(line: str, path: Path) -> dict:
    try:
        header = json.loads(line)
    except json.JSONDecodeError as exc:
        raise AnnotationError(f"{path}: malformed header line: {exc}") from exc
    if not isinstance(header, dict) or header.get("format_version") != FORMAT_VERSION:
        raise AnnotationError(
            f"{path}: missing or unsupported format_version (expected {FORMAT_VERSION!r})"
        )
    for field in ("threshold", "dimension", "normalized"):
        if field not in header:
            raise AnnotationError(f"{path}: header missing field {field!r}")
    return header


def _parse_record(obj: dict, lineno: int, path: Path, dimension: int,
                  normalized: bool, threshold: float) -> VerseAnnotation:
    where = f"{path}:{lineno}"
    for field in ("translation_id", "chapter", "index", "probs", "embedding"):
        if field not in obj:
            raise AnnotationError(f"{where}: record missing field {field!r}")
    chapter, index = obj["chapter"], obj["index"]
    if not (isinstance(chapter, int) and chapter >= 1 and
            isinstance(index, int) and index >= 1):
        raise AnnotationError(f"{where}: chapter/index must be 1-based integers")
    probs = obj["probs"]
    if not isinstance(probs, list) or len(probs) != len(LABELS):
        raise AnnotationError(
            f"{where}: ({chapter},{index}): probs must be a list of {len(LABELS)} reals"
        )
    for i, p in enumerate(probs):
        if not (isinstance(p, (int, float)) and math.isfinite(p) and 0.0 <= p <= 1.0):
            raise AnnotationError(
                f"{where}: ({chapter},{index}): probability for {LABELS[i]!r} "
                f"out of range [0,1]: {p!r}"
            )
    raw = obj["embedding"]
    if not isinstance(raw, list) or len(raw) != dimension:
        raise AnnotationError(
            f"{where}: ({chapter},{index}): dimension mismatch, embedding has "
            f"{len(raw) if isinstance(raw, list) else '?'} dims, set has {dimension}"
        )
    embedding = np.asarray(raw, dtype=np.float64)
    if not np.all(np.isfinite(embedding)):
        raise AnnotationError(f"{where}: ({chapter},{index}): non-finite embedding value")
    norm = float(np.linalg.norm(embedding))
    if norm == 0.0:
        raise AnnotationError(f"{where}: ({chapter},{index}): embedding is the zero vector")
    if not normalized or abs(norm - 1.0) > 1e-9:
        embedding = embedding / norm
    embedding.setflags(write=False)
    polarity = obj.get("polarity")
    if polarity is not None:
        if not (isinstance(polarity, (int, float)) and math.isfinite(polarity)
                and -1.0 <= polarity <= 1.0):
            raise AnnotationError(
                f"{where}: ({chapter},{index}): polarity out of range [-1,1]: {polarity!r}"
            )
        polarity = float(polarity)
    # stored label fields are ignored: probs are the source of truth
    labels = threshold_labels(probs, threshold)
    return VerseAnnotation(
        translation_id=obj["translation_id"],
        chapter=chapter,
        index=index,
        probs=tuple(float(p) for p in probs),
        labels=labels,
        embedding=embedding,
        external_polarity=polarity,
    )


def read_annotations(path, threshold: float | None = None) -> AnnotationSet:
    """Parse an annotation interchange file.

    ``threshold`` overrides the header threshold when given (labels are
    always recomputed from the probabilities either way).
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8-sig").splitlines()
    except OSError as exc:
        raise AnnotationError(f"cannot read {path}: {exc}") from exc
    lines = [ln for ln in lines if ln.strip()]
    if not lines:
        raise AnnotationError(f"{path}: empty annotation file")
    header = _parse_header(lines[0], path)
    eff_threshold = header["threshold"] if threshold is None else threshold
    if not (isinstance(eff_threshold, (int, float)) and 0.0 < eff_threshold < 1.0):
        raise AnnotationError(f"{path}: threshold out of range (0,1): {eff_threshold!r}")
    dimension = header["dimension"]
    if not (isinstance(dimension, int) and dimension > 0):
        raise AnnotationError(f"{path}: dimension must be a positive integer")
    normalized = bool(header["normalized"])

    entries: dict[tuple[int, int], VerseAnnotation] = {}
    translation_id = None
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise AnnotationError(f"{path}:{lineno}: malformed record: {exc}") from exc
        ann = _parse_record(obj, lineno, path, dimension, normalized, eff_threshold)
        if translation_id is None:
            translation_id = ann.translation_id
        elif ann.translation_id != translation_id:
            raise AnnotationError(
                f"{path}:{lineno}: mixed translation_ids "
                f"({translation_id!r} vs {ann.translation_id!r})"
            )
        if ann.key in entries:
            raise AnnotationError(
                f"{path}:{lineno}: duplicate (chapter,index) {ann.key}"
            )
        entries[ann.key] = ann
    if not entries:
        raise AnnotationError(f"{path}: no records after header")
    return AnnotationSet(translation_id, float(eff_threshold), dimension, entries)


@dataclass(frozen=True)
class ValidationReport:
    """Missing/extraneous (chapter, index) keys of an annotation set
    relative to its translation text; empty == valid."""

    translation_id: str
    missing: tuple[tuple[int, int], ...]
    extraneous: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.missing and not self.extraneous

    def describe(self) -> str:
        if self.ok:
            return f"{self.translation_id}: annotations complete"
        parts = []
        if self.missing:
            keys = ", ".join(f"({c},{i})" for c, i in self.missing)
            parts.append(f"missing annotations for {keys}")
        if self.extraneous:
            keys = ", ".join(f"({c},{i})" for c, i in self.extraneous)
            parts.append(f"extraneous annotations for {keys}")
        return f"{self.translation_id}: " + "; ".join(parts)


def validate_against_corpus(ann_set: AnnotationSet, text: TranslationText) -> ValidationReport:
    """Check that annotation keys cover exactly the verses of ``text``."""
    if ann_set.translation_id != text.translation_id:
        raise AnnotationError(
            f"translation_id mismatch: annotations are {ann_set.translation_id!r}, "
            f"text is {text.translation_id!r}"
        )
    text_keys = text.verse_keys()
    ann_keys = set(ann_set.entries)
    return ValidationReport(
        translation_id=text.translation_id,
        missing=tuple(sorted(text_keys - ann_keys)),
        extraneous=tuple(sorted(ann_keys - text_keys)),
    )
