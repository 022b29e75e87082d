#!/usr/bin/env python3
"""Regenerate the bundled 3-translation fixture under fixtures/.

Everything is derived from fixed seeds, so rerunning this script leaves
the checked-in files byte-identical.  The corpus is synthetic English
word salad; embeddings are constructed from per-verse Gram matrices so
that two designated verses carry known pairwise cosines:

* verse (9,43): 0.953 / 0.953 / 1.000  -> unique top-1 most similar
* verse (7,8):  0.139 / 0.154 / 0.554  -> unique top-1 least similar

All other verses draw pairwise cosines from [0.45, 0.85], keeping the
two extremes strictly extreme under mean/min/max ranking keys.
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

from verseval.annotations import LABELS, AnnotationSet, VerseAnnotation, threshold_labels
from verseval.report import write_annotations

ROOT = Path(__file__).resolve().parent.parent
FIXTURE_DIR = ROOT / "fixtures"

TRANSLATION_IDS = ("mtrans", "norton", "price")
VERSE_COUNTS = (5, 22, 7, 6, 9, 11, 8, 19, 43)
DIMENSION = 16
THRESHOLD = 0.5

MOST_SIMILAR = ((9, 43), (0.953, 0.953, 1.000))
LEAST_SIMILAR = ((7, 8), (0.139, 0.154, 0.554))

VOCAB = """
village temple gate wine shop devil foreign festival drum river moon stone
road master servant coat hat silver copper fortune trial crowd song night
morning harvest grain earth spring autumn lantern bridge market bell boat
garden wall letter mirror candle shadow
""".split()

# per-translation word swaps give the three texts distinct but related wording
SYNONYMS = {
    "mtrans": {"wine": "liquor", "road": "street", "crowd": "mob", "coat": "jacket"},
    "norton": {"devil": "demon", "shop": "tavern", "song": "ballad", "gate": "door"},
    "price": {"foreign": "strange", "master": "lord", "night": "dusk", "stone": "rock"},
}


def verse_text(rng: np.random.Generator, tid: str) -> str:
    words = list(rng.choice(VOCAB, size=int(rng.integers(4, 12))))
    swaps = SYNONYMS[tid]
    words = [swaps.get(w, w) for w in words]
    return (" ".join(words)).capitalize() + "."


def gram_vectors(cosines: tuple[float, float, float]) -> np.ndarray:
    """Three unit vectors in R^3 with the given pairwise cosines, ordered
    (ab, ac, bc)."""
    ab, ac, bc = cosines
    gram = np.array([[1.0, ab, ac], [ab, 1.0, bc], [ac, bc, 1.0]])
    eigvals, eigvecs = np.linalg.eigh(gram)
    if eigvals.min() < -1e-9:
        raise ValueError(f"cosine targets {cosines} are not realizable")
    vectors = eigvecs @ np.diag(np.sqrt(np.clip(eigvals, 0.0, None)))
    achieved = vectors @ vectors.T
    assert np.allclose(achieved, gram, atol=1e-9)
    return vectors


def embed(vectors: np.ndarray, rotation: np.ndarray) -> np.ndarray:
    """Lift 3-dim rows into DIMENSION dims and rotate; cosines preserved."""
    lifted = np.zeros((3, DIMENSION))
    lifted[:, :3] = vectors
    out = lifted @ rotation.T
    return out / np.linalg.norm(out, axis=1, keepdims=True)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    q, r = np.linalg.qr(rng.normal(size=(DIMENSION, DIMENSION)))
    return q * np.sign(np.diag(r))


def main() -> int:
    rng = np.random.default_rng(20240915)
    (FIXTURE_DIR / "translations").mkdir(parents=True, exist_ok=True)
    (FIXTURE_DIR / "annotations").mkdir(parents=True, exist_ok=True)

    pinned = {MOST_SIMILAR[0]: MOST_SIMILAR[1], LEAST_SIMILAR[0]: LEAST_SIMILAR[1]}

    texts = {tid: [] for tid in TRANSLATION_IDS}
    embeddings = {tid: {} for tid in TRANSLATION_IDS}
    probs = {tid: {} for tid in TRANSLATION_IDS}
    polarity = {tid: {} for tid in TRANSLATION_IDS}

    for chapter, count in enumerate(VERSE_COUNTS, start=1):
        for tid in TRANSLATION_IDS:
            texts[tid].append([])
        for index in range(1, count + 1):
            key = (chapter, index)
            targets = pinned.get(key)
            if targets is None:
                targets = tuple(np.round(rng.uniform(0.45, 0.85, size=3), 3))
            vectors = embed(gram_vectors(targets), random_rotation(rng))
            word_seed = int(rng.integers(0, 2**31))
            # shared base per verse: the "human" pair stays close to it,
            # the "machine" one drifts further, as real annotations would
            base_probs = rng.beta(0.8, 2.0, size=len(LABELS))
            base_pol = rng.uniform(-1.0, 1.0)
            spread = {"mtrans": 0.30, "norton": 0.10, "price": 0.10}
            for row, tid in enumerate(TRANSLATION_IDS):
                if key == MOST_SIMILAR[0]:
                    # twin texts for the engineered near-identical verse
                    text = "Twelfth month, harvest ends."
                    if tid == "mtrans":
                        text = "Twelfth month, harvest ends ends."
                elif key == LEAST_SIMILAR[0]:
                    # wholly different wording for the engineered outlier
                    text = verse_text(np.random.default_rng(word_seed + 7 * (row + 1)), tid)
                else:
                    text = verse_text(np.random.default_rng(word_seed), tid)
                texts[tid][-1].append(text)
                embeddings[tid][key] = vectors[row]
                s = spread[tid]
                p = np.round(np.clip(base_probs + rng.uniform(-s, s, size=len(LABELS)), 0.0, 1.0), 6)
                probs[tid][key] = tuple(float(x) for x in p)
                polarity[tid][key] = float(
                    np.round(np.clip(base_pol + rng.uniform(-s, s), -1.0, 1.0), 6)
                )

    for tid in TRANSLATION_IDS:
        lines = []
        for chapter, verses in enumerate(texts[tid], start=1):
            lines.append(f"### CHAPTER {chapter}")
            lines.extend(verses)
            lines.append("")
        (FIXTURE_DIR / "translations" / f"{tid}.txt").write_text(
            "\n".join(lines), encoding="utf-8"
        )

        entries = {}
        for key in sorted(embeddings[tid]):
            chapter, index = key
            vec = embeddings[tid][key]
            entries[key] = VerseAnnotation(
                translation_id=tid,
                chapter=chapter,
                index=index,
                probs=probs[tid][key],
                labels=threshold_labels(probs[tid][key], THRESHOLD),
                embedding=vec,
                external_polarity=polarity[tid][key],
            )
        ann_set = AnnotationSet(tid, THRESHOLD, DIMENSION, entries, normalized=True)
        write_annotations(ann_set, FIXTURE_DIR / "annotations" / f"{tid}.jsonl")

    config = """{
  "translations": [
    {"id": "mtrans", "corpus": "translations/mtrans.txt", "annotations": "annotations/mtrans.jsonl"},
    {"id": "norton", "corpus": "translations/norton.txt", "annotations": "annotations/norton.jsonl"},
    {"id": "price", "corpus": "translations/price.txt", "annotations": "annotations/price.jsonl"}
  ],
  "alignment": "strict",
  "threshold": 0.5,
  "topk_ngrams": 10,
  "topk_verses": 3,
  "ranking_key": "mean",
  "output_dir": "out"
}
"""
    (FIXTURE_DIR / "config.json").write_text(config, encoding="utf-8")
    total = sum(VERSE_COUNTS)
    print(f"wrote fixture: {len(TRANSLATION_IDS)} translations, "
          f"{len(VERSE_COUNTS)} chapters, {total} verses each, dim {DIMENSION}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
