"""Quantitative comparison of aligned translations.

Covers per-verse and per-chapter Jaccard agreement of predicted label
sets, cosine similarity statistics of verse embeddings, weighted and
external polarity trajectories, cumulative and chapter-wise label counts,
label co-occurrence matrices, and ranking of the most/least semantically
similar verses.

Conventions (also stamped into report metadata):

* Jaccard of two empty label sets is 1.0 — both annotators predicting
  "no sentiment" is perfect agreement.
* Chapter aggregates are unweighted arithmetic means over aligned verses.
* Standard deviation is the population form (divide by n): a chapter is
  the entire population of its verses.
* Accumulation runs in (chapter, index) ascending order so results are
  bitwise independent of evaluation parallelism.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

import numpy as np

from .annotations import LABEL_INDEX, LABELS, AnnotationSet, check_labels
from .corpus import AlignedCorpus
from .errors import MetricError

#: Signed integer weight per label: positive sentiments +, negative -,
#: empathetic neutral.
DEFAULT_WEIGHTS: dict[str, int] = {
    "optimistic": 2,
    "thankful": 3,
    "empathetic": 0,
    "pessimistic": -4,
    "anxious": -2,
    "sad": -3,
    "annoyed": -1,
    "denial": -5,
    "joking": 1,
}

# dot products of unit vectors may overshoot [-1, 1] by float noise only
_COSINE_SLACK = 1e-6


@dataclass(frozen=True)
class PolarityWeights:
    """Label -> integer weight map; every label has exactly one weight."""

    weights: dict[str, int]

    def __post_init__(self):
        if set(self.weights) != set(LABELS):
            missing = set(LABELS) - set(self.weights)
            extra = set(self.weights) - set(LABELS)
            raise MetricError(
                f"polarity weights must cover exactly the {len(LABELS)} labels"
                + (f"; missing {sorted(missing)}" if missing else "")
                + (f"; unknown {sorted(extra)}" if extra else "")
            )
        for label, w in self.weights.items():
            if not isinstance(w, int) or isinstance(w, bool):
                raise MetricError(f"weight for {label!r} must be an integer, got {w!r}")

    @classmethod
    def default(cls) -> "PolarityWeights":
        return cls(dict(DEFAULT_WEIGHTS))

    @classmethod
    def from_file(cls, path) -> "PolarityWeights":
        import json

        try:
            obj = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise MetricError(f"cannot read polarity weights from {path}: {exc}") from exc
        if not isinstance(obj, dict):
            raise MetricError(f"{path}: polarity weights must be a JSON object")
        return cls({str(k): v for k, v in obj.items()})

    def __getitem__(self, label: str) -> int:
        return self.weights[label]

    def as_tuple(self) -> tuple[int, ...]:
        """Weights in canonical label order."""
        return tuple(self.weights[L] for L in LABELS)


def pair_key(a: str, b: str) -> tuple[str, str]:
    """Canonical (lexicographically ordered) pair of translation ids."""
    if a == b:
        raise MetricError(f"pair of identical translation ids: {a!r}")
    return (a, b) if a < b else (b, a)


def pair_label(key: tuple[str, str]) -> str:
    return f"{key[0]}-{key[1]}"


def all_pairs(translation_ids) -> list[tuple[str, str]]:
    """All canonical pairs, sorted for deterministic iteration."""
    return sorted(pair_key(a, b) for a, b in combinations(translation_ids, 2))


def jaccard_verse(a, b) -> float:
    """|a n b| / |a u b| over two label sets; 1.0 when both are empty."""
    a = check_labels(a)
    b = check_labels(b)
    union = a | b
    if not union:
        return 1.0
    return len(a & b) / len(union)


def cosine(u, v, normalized: bool = False) -> float:
    """Cosine similarity of two vectors.

    With ``normalized=True`` the inputs are trusted to be unit vectors and
    only the dot product is taken.  The result is clamped to [-1, 1]; a
    value outside that range by more than float noise is an error.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape or u.ndim != 1:
        raise MetricError(f"dimension mismatch: {u.shape} vs {v.shape}")
    value = float(np.dot(u, v))
    if not normalized:
        nu = float(np.linalg.norm(u))
        nv = float(np.linalg.norm(v))
        if nu == 0.0 or nv == 0.0:
            raise MetricError("cosine undefined for the zero vector")
        value /= nu * nv
    if not math.isfinite(value) or abs(value) > 1.0 + _COSINE_SLACK:
        raise MetricError(f"cosine outside [-1,1]: {value!r}")
    return max(-1.0, min(1.0, value))


def _aligned_annotations(corpus: AlignedCorpus, ann: AnnotationSet, chapter: int):
    """Annotations of one chapter, limited to the aligned verse count."""
    count = corpus.verse_count(chapter)  # validates chapter range
    return [ann.get(chapter, i) for i in range(1, count + 1)]


def jaccard_chapter(corpus: AlignedCorpus, ann_a: AnnotationSet,
                    ann_b: AnnotationSet, chapter: int) -> float:
    """Mean per-verse Jaccard agreement over a chapter's aligned verses."""
    rows_a = _aligned_annotations(corpus, ann_a, chapter)
    rows_b = _aligned_annotations(corpus, ann_b, chapter)
    scores = [jaccard_verse(x.labels, y.labels) for x, y in zip(rows_a, rows_b)]
    return float(np.mean(scores))


def verse_cosines(corpus: AlignedCorpus, ann_a: AnnotationSet,
                  ann_b: AnnotationSet, chapter: int) -> list[float]:
    """Per-verse embedding cosines over a chapter, ascending verse order."""
    rows_a = _aligned_annotations(corpus, ann_a, chapter)
    rows_b = _aligned_annotations(corpus, ann_b, chapter)
    normalized = ann_a.normalized and ann_b.normalized
    return [
        cosine(x.embedding, y.embedding, normalized=normalized)
        for x, y in zip(rows_a, rows_b)
    ]


def cosine_chapter_stats(corpus: AlignedCorpus, ann_a: AnnotationSet,
                         ann_b: AnnotationSet, chapter: int) -> tuple[float, float]:
    """Mean and population standard deviation of per-verse cosines."""
    values = np.asarray(verse_cosines(corpus, ann_a, ann_b, chapter))
    return float(values.mean()), float(values.std())


def polarity_verse(labels, weights: PolarityWeights) -> int:
    """Signed sum of label weights; the empty set scores 0."""
    labels = check_labels(labels)
    return sum(weights[L] for L in labels)


def polarity_chapter_mean(ann: AnnotationSet, chapter: int,
                          weights: PolarityWeights) -> float:
    """Mean weighted polarity over all of the chapter's verses."""
    rows = ann.chapter_annotations(chapter)
    return float(np.mean([polarity_verse(a.labels, weights) for a in rows]))


def external_polarity_chapter_mean(ann: AnnotationSet, chapter: int) -> float | None:
    """Mean externally supplied polarity over verses that carry one, or
    None when no verse in the chapter does."""
    values = [
        a.external_polarity
        for a in ann.chapter_annotations(chapter)
        if a.external_polarity is not None
    ]
    if not values:
        return None
    return float(np.mean(values))


def cumulative_counts(ann: AnnotationSet) -> dict[str, int]:
    """Per label, the number of verses whose label set contains it."""
    counts = dict.fromkeys(LABELS, 0)
    for key in sorted(ann.entries):
        for L in ann.entries[key].labels:
            counts[L] += 1
    return counts


def chapter_counts(ann: AnnotationSet, chapter: int) -> dict[str, int]:
    """Like :func:`cumulative_counts` but restricted to one chapter."""
    counts = dict.fromkeys(LABELS, 0)
    for a in ann.chapter_annotations(chapter):
        for L in a.labels:
            counts[L] += 1
    return counts


def cooccurrence_matrix(ann: AnnotationSet) -> np.ndarray:
    """Symmetric 9x9 count matrix: off-diagonal (L,M) counts verses carrying
    both labels, the diagonal counts verses carrying the label at all."""
    matrix = np.zeros((len(LABELS), len(LABELS)), dtype=np.int64)
    for key in sorted(ann.entries):
        idx = sorted(LABEL_INDEX[L] for L in ann.entries[key].labels)
        for i in idx:
            matrix[i, i] += 1
        for i, j in combinations(idx, 2):
            matrix[i, j] += 1
            matrix[j, i] += 1
    return matrix


RANKING_KEYS = ("mean", "min", "max")


@dataclass(frozen=True)
class VerseSimilarity:
    """One aligned verse with its pairwise cosine scores across all
    translations and the scalar ranking score derived from them."""

    chapter: int
    index: int
    texts: dict[str, str]
    pair_scores: dict[tuple[str, str], float]
    score: float


def rank_similarity(corpus: AlignedCorpus, ann_sets: dict[str, AnnotationSet],
                    k: int, direction: str, ranking_key: str = "mean") -> list[VerseSimilarity]:
    """Rank aligned verses by combined pairwise cosine similarity.

    ``direction`` selects the top-k most or least similar verses; ties
    break by (chapter, index) ascending.  ``k`` beyond the verse count is
    clamped.  The combined score is the mean of all pairwise cosines by
    default (``min``/``max`` are available).
    """
    if direction not in ("most", "least"):
        raise MetricError(f"direction must be 'most' or 'least', got {direction!r}")
    if ranking_key not in RANKING_KEYS:
        raise MetricError(f"ranking key must be one of {RANKING_KEYS}, got {ranking_key!r}")
    if k < 1:
        raise MetricError(f"k must be >= 1, got {k}")
    ids = corpus.translation_ids
    if set(ann_sets) != set(ids):
        raise MetricError(
            f"annotation sets {sorted(ann_sets)} do not match corpus translations {sorted(ids)}"
        )
    pairs = all_pairs(ids)
    combine = {"mean": np.mean, "min": np.min, "max": np.max}[ranking_key]
    normalized = all(ann_sets[t].normalized for t in ids)

    records: list[VerseSimilarity] = []
    for chapter, index in corpus.iter_keys():
        scores = {
            p: cosine(
                ann_sets[p[0]].get(chapter, index).embedding,
                ann_sets[p[1]].get(chapter, index).embedding,
                normalized=normalized,
            )
            for p in pairs
        }
        texts = {
            t: corpus.translation(t).verse(chapter, index).text for t in ids
        }
        records.append(VerseSimilarity(
            chapter=chapter,
            index=index,
            texts=texts,
            pair_scores=scores,
            score=float(combine(list(scores.values()))),
        ))

    reverse = direction == "most"
    records.sort(key=lambda r: ((-r.score if reverse else r.score), r.chapter, r.index))
    return records[: min(k, len(records))]


@dataclass
class MetricBundle:
    """Every chapter/pair statistic computed for a run, keyed by canonical
    pair tuples, translation ids and 1-based chapter numbers."""

    translation_ids: tuple[str, ...]
    num_chapters: int
    jaccard: dict[tuple[tuple[str, str], int], float] = field(default_factory=dict)
    jaccard_avg: dict[tuple[str, str], float] = field(default_factory=dict)
    cosine_mean: dict[tuple[tuple[str, str], int], float] = field(default_factory=dict)
    cosine_std: dict[tuple[tuple[str, str], int], float] = field(default_factory=dict)
    polarity_mean: dict[tuple[str, int], float] = field(default_factory=dict)
    external_polarity_mean: dict[tuple[str, int], float | None] = field(default_factory=dict)
    cumulative_counts: dict[tuple[str, str], int] = field(default_factory=dict)
    chapter_counts: dict[tuple[str, int, str], int] = field(default_factory=dict)
    cooccurrence: dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def pairs(self) -> list[tuple[str, str]]:
        return all_pairs(self.translation_ids)


def _pair_chapter_stats(args):
    corpus, ann_sets, pair, chapter = args
    ann_a, ann_b = ann_sets[pair[0]], ann_sets[pair[1]]
    jac = jaccard_chapter(corpus, ann_a, ann_b, chapter)
    mean, std = cosine_chapter_stats(corpus, ann_a, ann_b, chapter)
    return pair, chapter, jac, mean, std


def compute_metrics(corpus: AlignedCorpus, ann_sets: dict[str, AnnotationSet],
                    weights: PolarityWeights | None = None,
                    parallel: int = 1) -> MetricBundle:
    """Compute the full :class:`MetricBundle` for an aligned corpus.

    ``parallel`` sets the worker-thread count for per-(pair, chapter)
    statistics; results are identical for every degree of parallelism.
    """
    weights = weights or PolarityWeights.default()
    ids = corpus.translation_ids
    if set(ann_sets) != set(ids):
        raise MetricError(
            f"annotation sets {sorted(ann_sets)} do not match corpus translations {sorted(ids)}"
        )
    bundle = MetricBundle(translation_ids=ids, num_chapters=corpus.num_chapters)
    pairs = all_pairs(ids)

    tasks = [
        (corpus, ann_sets, pair, chapter)
        for pair in pairs
        for chapter in range(1, corpus.num_chapters + 1)
    ]
    if parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(_pair_chapter_stats, tasks))
    else:
        results = [_pair_chapter_stats(t) for t in tasks]
    for pair, chapter, jac, mean, std in results:
        bundle.jaccard[(pair, chapter)] = jac
        bundle.cosine_mean[(pair, chapter)] = mean
        bundle.cosine_std[(pair, chapter)] = std
    for pair in pairs:
        chapter_values = [bundle.jaccard[(pair, c)] for c in range(1, corpus.num_chapters + 1)]
        bundle.jaccard_avg[pair] = float(np.mean(chapter_values))

    for tid in ids:
        ann = ann_sets[tid]
        for L, n in cumulative_counts(ann).items():
            bundle.cumulative_counts[(tid, L)] = n
        for chapter in range(1, corpus.num_chapters + 1):
            bundle.polarity_mean[(tid, chapter)] = polarity_chapter_mean(ann, chapter, weights)
            bundle.external_polarity_mean[(tid, chapter)] = external_polarity_chapter_mean(ann, chapter)
            for L, n in chapter_counts(ann, chapter).items():
                bundle.chapter_counts[(tid, chapter, L)] = n
        bundle.cooccurrence[tid] = cooccurrence_matrix(ann)
    return bundle
