"""Sentence embedders.

Two families behind one interface: a transformer encoder with mean
pooling (the production path; any local or hub model directory works,
an MPNet-style sentence encoder being the usual choice), and a
dependency-free deterministic feature-hashing embedder for offline runs
and tests (identifier ``hash:<dim>``).  All embedders return unit
vectors.
"""

from __future__ import annotations

import hashlib
import re

import numpy as np

DEFAULT_EMBEDDER = "sentence-transformers/all-mpnet-base-v2"

_WORD_RE = re.compile(r"[^\W_]+(?:'[^\W_]+)*", re.UNICODE)


class HashingEmbedder:
    """Signed feature hashing over word unigrams and bigrams.

    Deterministic across processes and platforms (hashes come from
    blake2b, not the salted builtin ``hash``).
    """

    def __init__(self, dimension: int):
        if dimension < 2:
            raise ValueError(f"embedding dimension must be >= 2, got {dimension}")
        self.dimension = dimension

    def _features(self, text: str):
        words = _WORD_RE.findall(text.lower())
        yield from words
        yield from (f"{a} {b}" for a, b in zip(words, words[1:]))

    def encode(self, texts) -> np.ndarray:
        out = np.zeros((len(texts), self.dimension))
        for row, text in enumerate(texts):
            any_feature = False
            for feature in self._features(text):
                digest = hashlib.blake2b(feature.encode("utf-8"), digest_size=8).digest()
                value = int.from_bytes(digest, "big")
                bucket = value % self.dimension
                sign = 1.0 if (value >> 40) & 1 else -1.0
                out[row, bucket] += sign
                any_feature = True
            if not any_feature:
                # punctuation-only verses still need a nonzero vector
                digest = hashlib.blake2b(text.encode("utf-8"), digest_size=8).digest()
                out[row, int.from_bytes(digest, "big") % self.dimension] = 1.0
        norms = np.linalg.norm(out, axis=1, keepdims=True)
        return out / norms


class TransformerEmbedder:
    """Mean-pooled hidden states of a transformer encoder, L2-normalized."""

    def __init__(self, model_name_or_path: str, max_length: int = 256,
                 batch_size: int = 16):
        import torch
        from transformers import AutoModel, AutoTokenizer

        self._torch = torch
        self.tokenizer = AutoTokenizer.from_pretrained(model_name_or_path)
        self.model = AutoModel.from_pretrained(model_name_or_path)
        self.model.eval()
        self.max_length = max_length
        self.batch_size = batch_size
        self.dimension = int(self.model.config.hidden_size)

    def encode(self, texts) -> np.ndarray:
        torch = self._torch
        chunks = []
        with torch.no_grad():
            for start in range(0, len(texts), self.batch_size):
                batch = list(texts[start : start + self.batch_size])
                enc = self.tokenizer(
                    batch, truncation=True, padding=True,
                    max_length=self.max_length, return_tensors="pt",
                )
                hidden = self.model(**enc).last_hidden_state
                mask = enc["attention_mask"].unsqueeze(-1).float()
                pooled = (hidden * mask).sum(dim=1) / mask.sum(dim=1).clamp(min=1e-9)
                chunks.append(pooled.numpy())
        out = np.concatenate(chunks, axis=0).astype(np.float64)
        return out / np.linalg.norm(out, axis=1, keepdims=True)


def load_embedder(identifier: str):
    """``hash:<dim>`` -> :class:`HashingEmbedder`; anything else is a
    transformer model name or local path."""
    if identifier.startswith("hash:"):
        return HashingEmbedder(int(identifier.split(":", 1)[1]))
    return TransformerEmbedder(identifier)
