"""
The full report pipeline
========================

One CLI invocation (or `verseval.cli.main`) runs everything: load and
align the corpora, validate the annotations, compute all metrics, and
write the report tree -- CSV tables, SVG charts with numeric sidecars,
the aggregated summary.json and a SHA-256 manifest.  Identical inputs
always produce byte-identical hashable files.
"""

import json
import tempfile
from pathlib import Path

from verseval.cli import main

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

out = Path(tempfile.mkdtemp(prefix="verseval_demo_")) / "report"
code = main(["--config", str(FIXTURES / "config.json"), "--out", str(out)])
assert code == 0

print("\nemitted files:")
for p in sorted(out.iterdir()):
    print(f"  {p.name:<28} {p.stat().st_size:>7} bytes")

print("\njaccard_table.csv:")
print((out / "jaccard_table.csv").read_text())

summary = json.loads((out / "summary.json").read_text())
print("conventions recorded in the report metadata:")
for key in ("threshold", "alignment_policy", "std_convention",
            "jaccard_empty_empty", "ranking_key"):
    print(f"  {key}: {summary['metadata'][key]}")
