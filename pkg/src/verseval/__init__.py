"""verseval: verse-by-verse comparison of parallel translations.

Compares two or more English translations of a chaptered source text
using multi-label sentiment agreement (Jaccard over predicted label
sets), embedding cosine similarity, weighted polarity trajectories and
n-gram analytics, and emits the results as deterministic machine-readable
reports and charts.
"""

__version__ = "0.1.0"

from .annotations import (
    LABELS,
    AnnotationSet,
    VerseAnnotation,
    read_annotations,
    threshold_labels,
    validate_against_corpus,
)
from .corpus import (
    AlignedCorpus,
    TranslationText,
    Verse,
    align,
    dump_translation,
    load_translation,
    segment_paragraphs,
)
from .errors import (
    AnnotationError,
    ConfigError,
    CorpusError,
    MetricError,
    ReportError,
    VersevalError,
)
from .metrics import (
    MetricBundle,
    PolarityWeights,
    compute_metrics,
    cooccurrence_matrix,
    cosine,
    cosine_chapter_stats,
    cumulative_counts,
    external_polarity_chapter_mean,
    jaccard_chapter,
    jaccard_verse,
    pair_key,
    polarity_chapter_mean,
    polarity_verse,
    rank_similarity,
)
from .ngrams import NgramTable, TokenSequence, extract_topk, load_stopwords, sentiment_topk, tokenize
from .report import ReportBundle, write_annotations

__all__ = [
    "LABELS",
    "AlignedCorpus",
    "AnnotationError",
    "AnnotationSet",
    "ConfigError",
    "CorpusError",
    "MetricBundle",
    "MetricError",
    "NgramTable",
    "PolarityWeights",
    "ReportBundle",
    "ReportError",
    "TokenSequence",
    "TranslationText",
    "Verse",
    "VerseAnnotation",
    "VersevalError",
    "align",
    "compute_metrics",
    "cooccurrence_matrix",
    "cosine",
    "cosine_chapter_stats",
    "cumulative_counts",
    "dump_translation",
    "extract_topk",
    "external_polarity_chapter_mean",
    "jaccard_chapter",
    "jaccard_verse",
    "load_stopwords",
    "load_translation",
    "pair_key",
    "polarity_chapter_mean",
    "polarity_verse",
    "rank_similarity",
    "read_annotations",
    "segment_paragraphs",
    "sentiment_topk",
    "threshold_labels",
    "tokenize",
    "validate_against_corpus",
    "write_annotations",
]
