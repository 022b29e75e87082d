"""Preparation of the labeled-tweet training table.

The raw dataset is a CSV of tweets with one binary column per emotion.
Preparation keeps the text plus the nine canonical labels (dropping the
report-style and surprise columns when present) and returns them in
canonical order, ready for multi-label fine-tuning.
"""

from __future__ import annotations

from pathlib import Path

import pandas as pd

from .labels import DROPPED_COLUMNS, LABELS, normalize_column

TEXT_COLUMNS = ("tweet", "text")


class DatasetError(ValueError):
    pass


def prepare_senwave(path) -> pd.DataFrame:
    """Load the raw labeled-tweet CSV into a training table.

    Returns a DataFrame with a ``text`` column followed by the nine label
    columns in canonical order, values coerced to 0/1 ints.
    """
    path = Path(path)
    try:
        raw = pd.read_csv(path)
    except (OSError, pd.errors.ParserError) as exc:
        raise DatasetError(f"cannot read dataset {path}: {exc}") from exc
    if raw.empty:
        raise DatasetError(f"{path}: dataset has no rows")

    by_key = {normalize_column(c): c for c in raw.columns}
    text_col = next((by_key[k] for k in TEXT_COLUMNS if k in by_key), None)
    if text_col is None:
        raise DatasetError(
            f"{path}: no text column found (expected one of {TEXT_COLUMNS})"
        )
    missing = [L for L in LABELS if L not in by_key]
    if missing:
        raise DatasetError(f"{path}: missing expected label columns {missing}")

    table = pd.DataFrame({"text": raw[text_col].astype(str)})
    for label in LABELS:
        column = raw[by_key[label]]
        values = pd.to_numeric(column, errors="coerce")
        if values.isna().any() or not values.isin((0, 1)).all():
            raise DatasetError(f"{path}: column {by_key[label]!r} is not binary 0/1")
        table[label] = values.astype(int)
    # report-style and surprise columns are intentionally not carried over
    dropped = [by_key[k] for k in DROPPED_COLUMNS if k in by_key]
    if dropped:
        table.attrs["dropped_columns"] = dropped
    return table.reset_index(drop=True)
