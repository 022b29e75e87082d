"""Inference over a corpus and emission of the annotation interchange file.

One record per verse: the classifier's nine sigmoid probabilities, a
unit-length sentence embedding and (optionally) a lexicon polarity in
[-1, 1].  The output is the line-delimited format the consumer toolkit
reads: a header object followed by one record object per line, reals at
up to 9 significant digits, records ordered by (chapter, index).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .corpusio import read_corpus
from .embed import load_embedder
from .labels import LABELS
from .polarity import lexicon_polarity

FORMAT_VERSION = "1"


def format_real(x: float) -> str:
    return format(float(x), ".9g")


def classify(model_artifact, texts, max_length: int = 128,
             batch_size: int = 16) -> np.ndarray:
    """Sigmoid label probabilities, one row of 9 per text."""
    import torch
    from transformers import AutoModelForSequenceClassification, AutoTokenizer

    tokenizer = AutoTokenizer.from_pretrained(model_artifact)
    model = AutoModelForSequenceClassification.from_pretrained(model_artifact)
    model.eval()
    rows = []
    with torch.no_grad():
        for start in range(0, len(texts), batch_size):
            batch = list(texts[start : start + batch_size])
            enc = tokenizer(batch, truncation=True, padding=True,
                            max_length=max_length, return_tensors="pt")
            logits = model(**enc).logits
            rows.append(torch.sigmoid(logits).numpy())
    probs = np.concatenate(rows, axis=0).astype(np.float64)
    if probs.shape[1] != len(LABELS):
        raise ValueError(
            f"classifier emits {probs.shape[1]} labels, interchange needs {len(LABELS)}"
        )
    return np.clip(probs, 0.0, 1.0)


def write_interchange(path, translation_id: str, records, threshold: float,
                      dimension: int) -> None:
    """``records`` iterates (chapter, index, probs, embedding, polarity)."""
    lines = [json.dumps({
        "format_version": FORMAT_VERSION,
        "threshold": threshold,
        "dimension": dimension,
        "normalized": True,
    })]
    for chapter, index, probs, embedding, polarity in records:
        fields = [
            f'"translation_id": {json.dumps(translation_id, ensure_ascii=False)}',
            f'"chapter": {chapter}',
            f'"index": {index}',
            '"probs": [' + ", ".join(format_real(p) for p in probs) + "]",
            '"embedding": [' + ", ".join(format_real(v) for v in embedding) + "]",
        ]
        if polarity is not None:
            fields.append(f'"polarity": {format_real(polarity)}')
        lines.append("{" + ", ".join(fields) + "}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def annotate_corpus(model_artifact, embedder_id: str, corpus_path, out_path,
                    threshold: float = 0.5, translation_id: str | None = None,
                    include_polarity: bool = True, max_length: int = 128) -> Path:
    """Annotate every verse of a corpus and write the interchange file."""
    if not 0.0 < threshold < 1.0:
        raise ValueError(f"threshold out of range (0,1): {threshold}")
    corpus_path = Path(corpus_path)
    translation_id = translation_id or corpus_path.stem

    chapters = read_corpus(corpus_path)
    keys = [(c, i)
            for c, verses in enumerate(chapters, start=1)
            for i in range(1, len(verses) + 1)]
    texts = [chapters[c - 1][i - 1] for c, i in keys]

    probs = classify(model_artifact, texts, max_length=max_length)
    embedder = load_embedder(embedder_id)
    embeddings = embedder.encode(texts)
    norms = np.linalg.norm(embeddings, axis=1)
    if not np.allclose(norms, 1.0, atol=1e-6):
        raise ValueError("embedder returned non-unit vectors")

    def records():
        for row, (c, i) in enumerate(keys):
            polarity = lexicon_polarity(texts[row]) if include_polarity else None
            yield c, i, probs[row], embeddings[row], polarity

    out_path = Path(out_path)
    write_interchange(out_path, translation_id, records(), threshold,
                      dimension=embeddings.shape[1])
    return out_path
