"""Deterministic report emission: CSV tables, SVG charts with numeric
sidecars, the aggregated summary document, and the annotation emitter.

Every table value is rounded exactly once, at emission, to 3 decimals
with half-up ties; chart sidecars carry the unrounded values.  Identical
bundles produce byte-identical files ("hashable content" = every .csv and
.json emitted; SVGs are rendered reproducibly but hashed separately since
font rasterization may differ across platforms).
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path

import numpy as np

from .annotations import FORMAT_VERSION, LABELS, AnnotationSet, format_real
from .errors import ReportError
from .metrics import MetricBundle, VerseSimilarity, pair_label
from .ngrams import NgramTable

HASHABLE_SUFFIXES = (".csv", ".json", ".txt")


def round3(x: float) -> str:
    """Render to exactly 3 decimals, ties rounding half-up (away from zero)."""
    x = float(x)
    if x == 0.0:
        x = 0.0  # avoid "-0.000"
    return str(Decimal(repr(x)).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


@dataclass
class ReportBundle:
    """Everything a run emits, plus the conventions needed to read it."""

    metadata: dict
    metrics: MetricBundle
    ngram_tables: dict[str, list[NgramTable]] = field(default_factory=dict)
    most_similar: list[VerseSimilarity] = field(default_factory=list)
    least_similar: list[VerseSimilarity] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def _open_csv(path: Path):
    return open(path, "w", encoding="utf-8", newline="")


def emit_jaccard_table(bundle: MetricBundle, path) -> None:
    """Chapter-by-pair Jaccard table with an Average row, 3 decimals."""
    path = Path(path)
    pairs = bundle.pairs
    with _open_csv(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["Chapter"] + [pair_label(p) for p in pairs])
        for c in range(1, bundle.num_chapters + 1):
            row = [f"Chapter {c}"]
            for p in pairs:
                if (p, c) not in bundle.jaccard:
                    raise ReportError(
                        f"missing jaccard value for pair {pair_label(p)} chapter {c}"
                    )
                row.append(round3(bundle.jaccard[(p, c)]))
            writer.writerow(row)
        avg = ["Average"]
        for p in pairs:
            values = [bundle.jaccard[(p, c)] for c in range(1, bundle.num_chapters + 1)]
            avg.append(round3(float(np.mean(values))))
        writer.writerow(avg)


def emit_cosine_table(bundle: MetricBundle, path) -> None:
    """Chapter-by-pair cosine table, cells formatted ``mean(std)``."""
    path = Path(path)
    pairs = bundle.pairs
    with _open_csv(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["Chapter"] + [pair_label(p) for p in pairs])
        for c in range(1, bundle.num_chapters + 1):
            row = [f"Chapter {c}"]
            for p in pairs:
                if (p, c) not in bundle.cosine_mean:
                    raise ReportError(
                        f"missing cosine value for pair {pair_label(p)} chapter {c}"
                    )
                row.append(f"{round3(bundle.cosine_mean[(p, c)])}({round3(bundle.cosine_std[(p, c)])})")
            writer.writerow(row)
        avg = ["Average"]
        for p in pairs:
            values = [bundle.cosine_mean[(p, c)] for c in range(1, bundle.num_chapters + 1)]
            avg.append(round3(float(np.mean(values))))
        writer.writerow(avg)


def emit_similarity_extremes(rankings: list[VerseSimilarity], path,
                             note: str | None = None) -> None:
    """One row per ranked verse: texts of every translation plus all
    pairwise scores and the combined ranking score, 3 decimals."""
    path = Path(path)
    if not rankings:
        raise ReportError("no similarity rankings to emit")
    ids = sorted(rankings[0].texts)
    pairs = sorted(rankings[0].pair_scores)
    with _open_csv(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        if note:
            writer.writerow([f"# {note}"])
        writer.writerow(
            ["chapter", "verse"] + ids + [pair_label(p) for p in pairs] + ["score"]
        )
        for r in rankings:
            writer.writerow(
                [r.chapter, r.index]
                + [r.texts[t] for t in ids]
                + [round3(r.pair_scores[p]) for p in pairs]
                + [round3(r.score)]
            )


def emit_ngram_tables(tables: list[NgramTable], path) -> None:
    """All of one translation's n-gram tables in a single CSV; an empty
    ``condition`` column marks the unconditioned tables."""
    path = Path(path)
    with _open_csv(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["n", "condition", "rank", "ngram", "count"])
        for table in tables:
            for rank, (tokens, count) in enumerate(table.entries, start=1):
                writer.writerow(
                    [table.n, table.condition or "", rank, " ".join(tokens), count]
                )


def _write_json(obj, path: Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(obj, f, ensure_ascii=False, indent=2)
        f.write("\n")


def emit_sentiment_charts(bundle: MetricBundle, out_dir) -> list[str]:
    """Bar/line/heatmap charts as SVG plus a numeric sidecar per chart.

    Returns the emitted file names.  Sidecar numbers equal the bundle
    values exactly.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    ids = list(bundle.translation_ids)
    chapters = list(range(1, bundle.num_chapters + 1))
    if not ids or not chapters or not bundle.cumulative_counts:
        raise ReportError("no data to chart")

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "verseval"
    emitted: list[str] = []

    def save(fig, name: str):
        fig.savefig(out_dir / name, format="svg", metadata={"Date": None})
        plt.close(fig)
        emitted.append(name)

    x = np.arange(len(LABELS))
    width = 0.8 / len(ids)

    # cumulative counts, one bar group per label
    fig, ax = plt.subplots(figsize=(9, 4.5))
    for j, tid in enumerate(ids):
        counts = [bundle.cumulative_counts[(tid, L)] for L in LABELS]
        ax.bar(x + (j - (len(ids) - 1) / 2) * width, counts, width, label=tid)
    ax.set_xticks(x, LABELS, rotation=45, ha="right")
    ax.set_ylabel("verse count")
    ax.set_title("Cumulative sentiment counts")
    ax.legend()
    fig.tight_layout()
    save(fig, "cumulative_counts.svg")
    _write_json(
        {
            "labels": list(LABELS),
            "counts": {tid: [bundle.cumulative_counts[(tid, L)] for L in LABELS] for tid in ids},
        },
        out_dir / "cumulative_counts.json",
    )
    emitted.append("cumulative_counts.json")

    # chapter-wise counts, one subplot per chapter
    ncols = 3
    nrows = -(-len(chapters) // ncols)
    fig, axes = plt.subplots(nrows, ncols, figsize=(4.5 * ncols, 3 * nrows), squeeze=False)
    for ci, c in enumerate(chapters):
        ax = axes[ci // ncols][ci % ncols]
        for j, tid in enumerate(ids):
            counts = [bundle.chapter_counts[(tid, c, L)] for L in LABELS]
            ax.bar(x + (j - (len(ids) - 1) / 2) * width, counts, width, label=tid)
        ax.set_title(f"Chapter {c}")
        ax.set_xticks(x, LABELS, rotation=90, fontsize=6)
    for ci in range(len(chapters), nrows * ncols):
        axes[ci // ncols][ci % ncols].axis("off")
    axes[0][0].legend(fontsize=7)
    fig.tight_layout()
    save(fig, "chapter_counts.svg")
    _write_json(
        {
            "labels": list(LABELS),
            "chapters": {
                str(c): {tid: [bundle.chapter_counts[(tid, c, L)] for L in LABELS] for tid in ids}
                for c in chapters
            },
        },
        out_dir / "chapter_counts.json",
    )
    emitted.append("chapter_counts.json")

    # weighted polarity trajectory
    fig, ax = plt.subplots(figsize=(7, 4))
    for tid in ids:
        ax.plot(chapters, [bundle.polarity_mean[(tid, c)] for c in chapters],
                marker="o", label=tid)
    ax.axhline(0.0, color="grey", linewidth=0.8)
    ax.set_xlabel("chapter")
    ax.set_ylabel("mean weighted polarity")
    ax.set_title("Weighted polarity by chapter")
    ax.legend()
    fig.tight_layout()
    save(fig, "polarity_weighted.svg")
    _write_json(
        {
            "chapters": chapters,
            "series": {tid: [bundle.polarity_mean[(tid, c)] for c in chapters] for tid in ids},
        },
        out_dir / "polarity_weighted.json",
    )
    emitted.append("polarity_weighted.json")

    # external polarity trajectory, only when any verse carried one
    if any(v is not None for v in bundle.external_polarity_mean.values()):
        fig, ax = plt.subplots(figsize=(7, 4))
        for tid in ids:
            series = [bundle.external_polarity_mean[(tid, c)] for c in chapters]
            xs = [c for c, v in zip(chapters, series) if v is not None]
            ys = [v for v in series if v is not None]
            ax.plot(xs, ys, marker="o", label=tid)
        ax.axhline(0.0, color="grey", linewidth=0.8)
        ax.set_xlabel("chapter")
        ax.set_ylabel("mean external polarity")
        ax.set_title("External polarity by chapter")
        ax.legend()
        fig.tight_layout()
        save(fig, "polarity_external.svg")
        _write_json(
            {
                "chapters": chapters,
                "series": {
                    tid: [bundle.external_polarity_mean[(tid, c)] for c in chapters]
                    for tid in ids
                },
            },
            out_dir / "polarity_external.json",
        )
        emitted.append("polarity_external.json")

    # one co-occurrence heatmap per translation
    for tid in ids:
        matrix = bundle.cooccurrence[tid]
        fig, ax = plt.subplots(figsize=(6, 5))
        im = ax.imshow(matrix, cmap="viridis")
        ax.set_xticks(x, LABELS, rotation=90, fontsize=7)
        ax.set_yticks(x, LABELS, fontsize=7)
        for i in range(len(LABELS)):
            for j in range(len(LABELS)):
                ax.text(j, i, int(matrix[i, j]), ha="center", va="center",
                        color="white", fontsize=6)
        ax.set_title(f"Label co-occurrence: {tid}")
        fig.colorbar(im, ax=ax)
        fig.tight_layout()
        save(fig, f"heatmap_{tid}.svg")
        _write_json(
            {"labels": list(LABELS), "matrix": matrix.tolist()},
            out_dir / f"heatmap_{tid}.json",
        )
        emitted.append(f"heatmap_{tid}.json")
    return emitted


def write_annotations(ann_set: AnnotationSet, path) -> None:
    """Emit the annotation interchange file: a header line followed by one
    record per verse, reals at up to 9 significant digits."""
    path = Path(path)
    header = {
        "format_version": FORMAT_VERSION,
        "threshold": float(ann_set.threshold),
        "dimension": ann_set.dimension,
        "normalized": ann_set.normalized,
    }
    lines = [json.dumps(header, ensure_ascii=False)]
    for key in sorted(ann_set.entries):
        ann = ann_set.entries[key]
        probs = "[" + ", ".join(format_real(p) for p in ann.probs) + "]"
        emb = "[" + ", ".join(format_real(v) for v in ann.embedding) + "]"
        record = (
            "{"
            f'"translation_id": {json.dumps(ann.translation_id, ensure_ascii=False)}, '
            f'"chapter": {ann.chapter}, "index": {ann.index}, '
            f'"probs": {probs}, "embedding": {emb}'
        )
        if ann.external_polarity is not None:
            record += f', "polarity": {format_real(ann.external_polarity)}'
        record += "}"
        lines.append(record)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _similarity_records(rankings: list[VerseSimilarity]) -> list[dict]:
    out = []
    for r in rankings:
        out.append(
            {
                "chapter": r.chapter,
                "verse": r.index,
                "texts": {t: r.texts[t] for t in sorted(r.texts)},
                "pair_scores": {pair_label(p): r.pair_scores[p] for p in sorted(r.pair_scores)},
                "score": r.score,
            }
        )
    return out


def write_summary(report: ReportBundle, path) -> None:
    """One structured document aggregating the full bundle."""
    bundle = report.metrics
    chapters = list(range(1, bundle.num_chapters + 1))
    doc = {
        "metadata": report.metadata,
        "pairs": [
            {
                "pair": pair_label(p),
                "jaccard": {str(c): bundle.jaccard[(p, c)] for c in chapters},
                "jaccard_avg": bundle.jaccard_avg[p],
                "cosine_mean": {str(c): bundle.cosine_mean[(p, c)] for c in chapters},
                "cosine_std": {str(c): bundle.cosine_std[(p, c)] for c in chapters},
            }
            for p in bundle.pairs
        ],
        "translations": [
            {
                "id": tid,
                "polarity_mean": {str(c): bundle.polarity_mean[(tid, c)] for c in chapters},
                "external_polarity_mean": {
                    str(c): bundle.external_polarity_mean[(tid, c)] for c in chapters
                },
                "cumulative_counts": {L: bundle.cumulative_counts[(tid, L)] for L in LABELS},
                "chapter_counts": {
                    str(c): {L: bundle.chapter_counts[(tid, c, L)] for L in LABELS}
                    for c in chapters
                },
                "cooccurrence": bundle.cooccurrence[tid].tolist(),
            }
            for tid in bundle.translation_ids
        ],
        "ngrams": {
            tid: [
                {
                    "n": t.n,
                    "condition": t.condition,
                    "entries": [{"ngram": list(g), "count": c} for g, c in t.entries],
                }
                for t in tables
            ]
            for tid, tables in sorted(report.ngram_tables.items())
        },
        "similarity": {
            "most": _similarity_records(report.most_similar),
            "least": _similarity_records(report.least_similar),
        },
        "warnings": list(report.warnings),
    }
    _write_json(doc, Path(path))


def write_manifest(out_dir, exclude=("manifest.json",)) -> dict[str, str]:
    """SHA-256 manifest of the hashable report files in ``out_dir``."""
    out_dir = Path(out_dir)
    hashes: dict[str, str] = {}
    for p in sorted(out_dir.iterdir()):
        if p.name in exclude or not p.is_file():
            continue
        if p.suffix in HASHABLE_SUFFIXES:
            hashes[p.name] = hashlib.sha256(p.read_bytes()).hexdigest()
    _write_json({"hash": "sha256", "files": hashes}, out_dir / "manifest.json")
    return hashes


def emit_all(report: ReportBundle, out_dir, charts: bool = True) -> None:
    """Write the complete report tree for one run."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    emit_jaccard_table(report.metrics, out_dir / "jaccard_table.csv")
    emit_cosine_table(report.metrics, out_dir / "cosine_table.csv")
    if report.most_similar:
        emit_similarity_extremes(report.most_similar, out_dir / "similarity_most.csv")
    if report.least_similar:
        emit_similarity_extremes(report.least_similar, out_dir / "similarity_least.csv")
    for tid, tables in sorted(report.ngram_tables.items()):
        emit_ngram_tables(tables, out_dir / f"ngrams_{tid}.csv")
    if charts:
        emit_sentiment_charts(report.metrics, out_dir)
    write_summary(report, out_dir / "summary.json")
    (out_dir / "warnings.txt").write_text(
        "".join(w + "\n" for w in report.warnings), encoding="utf-8"
    )
    write_manifest(out_dir)
