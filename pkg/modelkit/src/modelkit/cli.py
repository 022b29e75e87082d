"""Command-line entry points for the annotation producer."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="modelkit",
        description="Produce annotation interchange files: prepare the labeled "
        "dataset, fine-tune the classifier, annotate corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prepare", help="normalize the raw labeled-tweet CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)

    p = sub.add_parser("train", help="fine-tune the multi-label classifier")
    p.add_argument("--table", required=True, help="prepared training table CSV")
    p.add_argument("--base", default=None, help="base model name or path")
    p.add_argument("--out", required=True, help="artifact output directory")
    p.add_argument("--epochs", type=int, default=4)
    p.add_argument("--batch-size", type=int, default=1)
    p.add_argument("--dropout", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--learning-rate", type=float, default=2e-5)
    p.add_argument("--max-length", type=int, default=128)

    p = sub.add_parser("annotate", help="annotate a corpus into an interchange file")
    p.add_argument("--artifact", required=True, help="trained classifier directory")
    p.add_argument("--embedder", default="sentence-transformers/all-mpnet-base-v2",
                   help="embedder model path/name, or hash:<dim> for the offline embedder")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--id", default=None, help="translation id (default: corpus stem)")
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--no-polarity", action="store_true")

    p = sub.add_parser("export-onnx", help="export the classifier to ONNX")
    p.add_argument("--artifact", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("make-tiny-base", help="write a small random base model "
                       "for offline smoke runs")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except Exception as exc:  # surfaced uniformly; stack traces help nobody here
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    if args.command == "prepare":
        from .senwave import prepare_senwave

        table = prepare_senwave(args.input)
        table.to_csv(args.output, index=False)
        print(f"wrote {len(table)} rows to {args.output}")
        return 0

    if args.command == "train":
        import pandas as pd

        from .basemodel import DEFAULT_BASE_MODEL
        from .train import FineTuneSpec, finetune

        spec = FineTuneSpec(
            base_model=args.base or DEFAULT_BASE_MODEL,
            epochs=args.epochs,
            batch_size=args.batch_size,
            dropout=args.dropout,
            seed=args.seed,
            learning_rate=args.learning_rate,
            max_length=args.max_length,
        )
        finetune(spec, pd.read_csv(args.table), args.out)
        print(f"artifact saved to {args.out}")
        return 0

    if args.command == "annotate":
        from .annotate import annotate_corpus

        out = annotate_corpus(
            args.artifact, args.embedder, args.corpus, args.out,
            threshold=args.threshold, translation_id=args.id,
            include_polarity=not args.no_polarity,
        )
        print(f"annotations written to {out}")
        return 0

    if args.command == "export-onnx":
        from .onnx_export import export_onnx

        export_onnx(args.artifact, args.out)
        print(f"exported to {args.out}")
        return 0

    if args.command == "make-tiny-base":
        from .basemodel import create_tiny_base

        create_tiny_base(args.out, seed=args.seed)
        print(f"tiny base model written to {args.out}")
        return 0

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
