"""Multi-label fine-tuning of the sentiment classifier.

The classifier is an uncased bidirectional transformer with a dropout
layer (p=0.3 by default) and a 9-way linear head; per-label sigmoid
probabilities come from binary cross-entropy training.  Training follows
the reference recipe of batch size 1 and 4 epochs by default.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from .labels import LABELS


class TrainingError(RuntimeError):
    pass


@dataclass
class FineTuneSpec:
    """Hyperparameters of one fine-tuning run."""

    base_model: str
    epochs: int = 4
    batch_size: int = 1
    dropout: float = 0.3
    num_labels: int = len(LABELS)
    seed: int = 0
    learning_rate: float = 2e-5
    max_length: int = 128
    holdout_fraction: float = 0.1

    def validate(self) -> None:
        if self.num_labels != len(LABELS):
            raise TrainingError(
                f"label count must be {len(LABELS)} to match the interchange "
                f"contract, got {self.num_labels}"
            )
        if self.epochs < 0:
            raise TrainingError(f"epochs must be >= 0, got {self.epochs}")
        if self.batch_size < 1:
            raise TrainingError(f"batch size must be >= 1, got {self.batch_size}")
        if not 0.0 <= self.dropout < 1.0:
            raise TrainingError(f"dropout must be in [0,1), got {self.dropout}")
        if not 0.0 <= self.holdout_fraction < 1.0:
            raise TrainingError(
                f"holdout fraction must be in [0,1), got {self.holdout_fraction}"
            )


def _seed_everything(seed: int) -> None:
    import torch

    random.seed(seed)
    np.random.seed(seed)
    torch.manual_seed(seed)


def _encode(tokenizer, texts, labels, max_length):
    import torch

    enc = tokenizer(
        list(texts), truncation=True, padding="max_length",
        max_length=max_length, return_tensors="pt",
    )
    return torch.utils.data.TensorDataset(
        enc["input_ids"], enc["attention_mask"],
        torch.tensor(np.asarray(labels), dtype=torch.float32),
    )


def _mean_loss(model, dataset, batch_size: int = 16) -> float:
    """Evaluation-mode mean BCE loss over a dataset."""
    import torch

    model.eval()
    loader = torch.utils.data.DataLoader(dataset, batch_size=batch_size)
    total, count = 0.0, 0
    with torch.no_grad():
        for input_ids, attention_mask, labels in loader:
            out = model(input_ids=input_ids, attention_mask=attention_mask, labels=labels)
            total += float(out.loss) * len(input_ids)
            count += len(input_ids)
    return total / max(count, 1)


def finetune(spec: FineTuneSpec, table: pd.DataFrame, out_dir) -> Path:
    """Fine-tune on a prepared training table and save the artifact.

    Writes model, tokenizer and ``training_log.json`` (per-epoch losses,
    holdout loss, the spec) to ``out_dir``.  Raises
    :class:`TrainingError` when the loss diverges to a non-finite value.
    """
    import torch
    from transformers import AutoModelForSequenceClassification, AutoTokenizer

    spec.validate()
    if table.empty:
        raise TrainingError("training table has no rows")
    missing = [c for c in ("text", *LABELS) if c not in table.columns]
    if missing:
        raise TrainingError(f"training table missing columns {missing}")

    _seed_everything(spec.seed)
    tokenizer = AutoTokenizer.from_pretrained(spec.base_model)
    model = AutoModelForSequenceClassification.from_pretrained(
        spec.base_model,
        num_labels=spec.num_labels,
        problem_type="multi_label_classification",
        classifier_dropout=spec.dropout,
    )

    # seeded split: train on the bulk, keep a small holdout for a sanity metric
    indices = np.random.default_rng(spec.seed).permutation(len(table))
    n_holdout = int(len(table) * spec.holdout_fraction)
    holdout_idx, train_idx = indices[:n_holdout], indices[n_holdout:]
    if len(train_idx) == 0:
        raise TrainingError("holdout fraction leaves no training rows")

    label_matrix = table[list(LABELS)].to_numpy(dtype=np.float32)
    train_set = _encode(tokenizer, table["text"].iloc[train_idx], label_matrix[train_idx],
                        spec.max_length)
    holdout_set = (
        _encode(tokenizer, table["text"].iloc[holdout_idx], label_matrix[holdout_idx],
                spec.max_length)
        if n_holdout else None
    )

    initial_loss = _mean_loss(model, train_set)
    optimizer = torch.optim.AdamW(model.parameters(), lr=spec.learning_rate)
    generator = torch.Generator().manual_seed(spec.seed)
    loader = torch.utils.data.DataLoader(
        train_set, batch_size=spec.batch_size, shuffle=True, generator=generator,
    )

    epoch_losses: list[float] = []
    for epoch in range(spec.epochs):
        model.train()
        total, count = 0.0, 0
        for input_ids, attention_mask, labels in loader:
            optimizer.zero_grad()
            out = model(input_ids=input_ids, attention_mask=attention_mask, labels=labels)
            loss_value = out.loss.detach().item()
            if not math.isfinite(loss_value):
                raise TrainingError(
                    f"training diverged: non-finite loss in epoch {epoch + 1}"
                )
            out.loss.backward()
            optimizer.step()
            total += loss_value * len(input_ids)
            count += len(input_ids)
        epoch_losses.append(total / count)

    final_loss = _mean_loss(model, train_set)
    holdout_loss = _mean_loss(model, holdout_set) if holdout_set else None

    out_dir = Path(out_dir)
    model.save_pretrained(out_dir)
    tokenizer.save_pretrained(out_dir)
    log = {
        "spec": asdict(spec),
        "train_rows": int(len(train_idx)),
        "holdout_rows": int(n_holdout),
        "initial_loss": initial_loss,
        "epoch_losses": epoch_losses,
        "final_loss": final_loss,
        "holdout_loss": holdout_loss,
    }
    (out_dir / "training_log.json").write_text(
        json.dumps(log, indent=2) + "\n", encoding="utf-8"
    )
    return out_dir
