"""Base-model helpers.

Real runs fine-tune a published uncased bidirectional-transformer
checkpoint (default ``bert-base-uncased``).  For offline tests and smoke
runs, :func:`create_tiny_base` materializes a small randomly initialized
model of the same architecture with a character-level WordPiece
vocabulary, so the full pipeline runs with no network access.
"""

from __future__ import annotations

import string
from pathlib import Path

DEFAULT_BASE_MODEL = "bert-base-uncased"


def _char_vocab() -> dict[str, int]:
    tokens = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]
    chars = string.ascii_lowercase + string.digits + "'#@.,!?-:;()$%&"
    tokens += list(chars)
    tokens += ["##" + c for c in string.ascii_lowercase + string.digits]
    return {t: i for i, t in enumerate(tokens)}


def create_tiny_base(out_dir, seed: int = 0, hidden_size: int = 64,
                     num_layers: int = 2) -> Path:
    """Write a small random-weight uncased encoder + tokenizer to ``out_dir``.

    The artifact is a bare encoder, like any published base checkpoint;
    the classification head is initialized at fine-tune time.
    """
    import torch
    from transformers import BertConfig, BertModel, BertTokenizer

    out_dir = Path(out_dir)
    vocab = _char_vocab()
    tokenizer = BertTokenizer(vocab=vocab, do_lower_case=True)
    torch.manual_seed(seed)
    config = BertConfig(
        vocab_size=len(vocab),
        hidden_size=hidden_size,
        num_hidden_layers=num_layers,
        num_attention_heads=max(2, hidden_size // 32),
        intermediate_size=hidden_size * 2,
        max_position_embeddings=512,
    )
    model = BertModel(config)
    model.save_pretrained(out_dir)
    tokenizer.save_pretrained(out_dir)
    return out_dir
