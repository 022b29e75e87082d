"""Command-line entry point: orchestrate the full comparison pipeline.

A run is described by a JSON config document (paths resolved relative to
the config file); every field can be overridden by a flag.  Exit codes:
0 success, 2 input validation failure, 3 configuration error, 4 I/O
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .annotations import LABELS, read_annotations, validate_against_corpus
from .corpus import align, dump_translation, load_translation
from .errors import AnnotationError, ConfigError, CorpusError, MetricError, ReportError
from .metrics import PolarityWeights, compute_metrics, rank_similarity
from .ngrams import extract_topk, load_stopwords, sentiment_topk, tokenize
from .report import ReportBundle, emit_all

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFIG = 3
EXIT_IO = 4


@dataclass
class RunConfig:
    """Validated run configuration."""

    translations: list[dict]  # {"id", "corpus", "annotations"}
    output_dir: Path
    alignment: str = "strict"
    threshold: float | None = 0.5
    weights: Path | None = None
    stopwords: Path | None = None
    topk_ngrams: int = 10
    topk_verses: int = 3
    ranking_key: str = "mean"
    parallel: int = 1
    charts: bool = True

    def validate(self) -> None:
        if len(self.translations) < 2:
            raise ConfigError("config needs at least 2 translations")
        ids = [t["id"] for t in self.translations]
        if len(set(ids)) != len(ids):
            raise ConfigError(f"duplicate translation ids: {ids}")
        if self.alignment not in ("strict", "truncate"):
            raise ConfigError(f"alignment must be strict or truncate, got {self.alignment!r}")
        if self.threshold is not None and not 0.0 < self.threshold < 1.0:
            raise ConfigError(f"threshold out of range (0,1): {self.threshold}")
        if self.topk_ngrams < 1:
            raise ConfigError(f"topk_ngrams must be >= 1, got {self.topk_ngrams}")
        if self.topk_verses < 1:
            raise ConfigError(f"topk_verses must be >= 1, got {self.topk_verses}")
        if self.ranking_key not in ("mean", "min", "max"):
            raise ConfigError(f"ranking_key must be mean, min or max, got {self.ranking_key!r}")
        if self.parallel < 1:
            raise ConfigError(f"parallel must be >= 1, got {self.parallel}")


def load_config(path: Path, overrides: argparse.Namespace) -> RunConfig:
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"config {path} must be a JSON object")

    base = path.parent

    def resolve(p):
        return (base / p).resolve() if p is not None else None

    translations = []
    for i, t in enumerate(raw.get("translations", [])):
        for key in ("id", "corpus", "annotations"):
            if key not in t:
                raise ConfigError(f"config translations[{i}] missing field {key!r}")
        translations.append(
            {
                "id": str(t["id"]),
                "corpus": resolve(t["corpus"]),
                "annotations": resolve(t["annotations"]),
            }
        )

    cfg = RunConfig(
        translations=translations,
        output_dir=resolve(raw.get("output_dir", "out")),
        alignment=raw.get("alignment", "strict"),
        threshold=raw.get("threshold", 0.5),
        weights=resolve(raw.get("weights")),
        stopwords=resolve(raw.get("stopwords")),
        topk_ngrams=raw.get("topk_ngrams", 10),
        topk_verses=raw.get("topk_verses", 3),
        ranking_key=raw.get("ranking_key", "mean"),
    )
    if overrides.out is not None:
        cfg.output_dir = Path(overrides.out).resolve()
    if overrides.threshold is not None:
        cfg.threshold = overrides.threshold
    if overrides.alignment is not None:
        cfg.alignment = overrides.alignment
    if overrides.topk_ngrams is not None:
        cfg.topk_ngrams = overrides.topk_ngrams
    if overrides.topk_verses is not None:
        cfg.topk_verses = overrides.topk_verses
    if overrides.stopwords is not None:
        cfg.stopwords = Path(overrides.stopwords).resolve()
    if overrides.weights is not None:
        cfg.weights = Path(overrides.weights).resolve()
    cfg.parallel = overrides.parallel
    cfg.charts = not overrides.no_charts
    cfg.validate()
    return cfg


def _load_inputs(cfg: RunConfig):
    """Load and cross-validate all corpora and annotation sets."""
    texts = {}
    ann_sets = {}
    for t in cfg.translations:
        text = load_translation(t["corpus"], t["id"])
        ann = read_annotations(t["annotations"], threshold=cfg.threshold)
        if ann.translation_id != t["id"]:
            raise AnnotationError(
                f"{t['annotations']}: records carry translation_id "
                f"{ann.translation_id!r}, config says {t['id']!r}"
            )
        report = validate_against_corpus(ann, text)
        if not report.ok:
            raise AnnotationError(report.describe())
        texts[t["id"]] = text
        ann_sets[t["id"]] = ann
    dims = {a.dimension for a in ann_sets.values()}
    if len(dims) != 1:
        raise AnnotationError(f"embedding dimensions differ across translations: {sorted(dims)}")
    return texts, ann_sets


def validate_only(cfg: RunConfig) -> int:
    """Load and validate every input, computing nothing."""
    _load_inputs(cfg)
    ids = [t["id"] for t in cfg.translations]
    print(f"inputs consistent: {len(ids)} translations ({', '.join(ids)})")
    return EXIT_OK


def run(cfg: RunConfig) -> int:
    """Execute the full pipeline and write the report tree."""
    texts, ann_sets = _load_inputs(cfg)
    corpus = align([texts[t["id"]] for t in cfg.translations], cfg.alignment)
    warnings = list(corpus.warnings)

    weights = PolarityWeights.from_file(cfg.weights) if cfg.weights else PolarityWeights.default()
    bundle = compute_metrics(corpus, ann_sets, weights, parallel=cfg.parallel)

    stopwords = load_stopwords(cfg.stopwords)
    ngram_tables = {}
    for tid in corpus.translation_ids:
        sequences = [tokenize(v, stopwords) for v in texts[tid].iter_verses()]
        tables = []
        for n in (2, 3):
            tables.append(extract_topk(sequences, n, cfg.topk_ngrams))
            for label in LABELS:
                tables.append(sentiment_topk(sequences, ann_sets[tid], label, n, cfg.topk_ngrams))
        ngram_tables[tid] = tables

    total_verses = sum(corpus.effective_counts)
    if cfg.topk_verses > total_verses:
        warnings.append(
            f"topk_verses {cfg.topk_verses} exceeds aligned verse count "
            f"{total_verses}; clamped"
        )
    most = rank_similarity(corpus, ann_sets, cfg.topk_verses, "most", cfg.ranking_key)
    least = rank_similarity(corpus, ann_sets, cfg.topk_verses, "least", cfg.ranking_key)

    metadata = {
        "tool": "verseval",
        "version": __version__,
        "threshold": cfg.threshold,
        "set_thresholds": {tid: ann_sets[tid].threshold for tid in corpus.translation_ids},
        "alignment_policy": cfg.alignment,
        "effective_verse_counts": list(corpus.effective_counts),
        "std_convention": "population",
        "jaccard_empty_empty": 1.0,
        "ranking_key": cfg.ranking_key,
        "labels": list(LABELS),
        "polarity_weights": {L: weights[L] for L in LABELS},
        "topk_ngrams": cfg.topk_ngrams,
        "topk_verses": cfg.topk_verses,
        "embedding_dimension": next(iter(ann_sets.values())).dimension,
        "embeddings_normalized": all(a.normalized for a in ann_sets.values()),
    }
    report = ReportBundle(
        metadata=metadata,
        metrics=bundle,
        ngram_tables=ngram_tables,
        most_similar=most,
        least_similar=least,
        warnings=warnings,
    )
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    for tid in corpus.translation_ids:
        dump_translation(texts[tid], cfg.output_dir / f"corpus_{tid}.txt")
    emit_all(report, cfg.output_dir, charts=cfg.charts)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    print(f"report written to {cfg.output_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verseval",
        description="Compare parallel translations verse-by-verse via sentiment "
        "agreement, embedding similarity, polarity and n-grams.",
    )
    parser.add_argument("--config", required=True, help="path to the JSON run config")
    parser.add_argument("--out", help="output directory (overrides config)")
    parser.add_argument("--threshold", type=float, help="label decision threshold in (0,1)")
    parser.add_argument("--alignment", choices=["strict", "truncate"],
                        help="verse alignment policy")
    parser.add_argument("--topk-ngrams", type=int, dest="topk_ngrams",
                        help="entries per n-gram table")
    parser.add_argument("--topk-verses", type=int, dest="topk_verses",
                        help="entries per similarity-extremes table")
    parser.add_argument("--stopwords", help="stopword file (default: bundled English list)")
    parser.add_argument("--weights", help="polarity weight override file (JSON)")
    parser.add_argument("--parallel", type=int, default=1,
                        help="worker threads for metric computation")
    parser.add_argument("--no-charts", action="store_true",
                        help="skip SVG chart emission")
    parser.add_argument("--validate-only", action="store_true",
                        help="check inputs for consistency and exit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(Path(args.config), args)
        if args.validate_only:
            return validate_only(cfg)
        return run(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (CorpusError, AnnotationError, MetricError, ReportError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
