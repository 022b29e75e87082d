"""Canonical sentiment label order for the annotation interchange format.

This order is part of the interchange contract with the verseval
consumer: index i of every probability vector refers to LABELS[i].
Changing it breaks every downstream report.
"""

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

#: source-dataset columns that are dropped during preparation
DROPPED_COLUMNS: tuple[str, ...] = ("official report", "surprise")


def normalize_column(name: str) -> str:
    """Case/punctuation-insensitive column key ("Official report" -> "official report")."""
    return " ".join(name.strip().lower().replace("_", " ").split())
