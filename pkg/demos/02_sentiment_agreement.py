"""
Sentiment agreement between translations
========================================

Each verse carries a predicted set of sentiment labels (any subset of the
nine-label universe).  Agreement between two translations is the Jaccard
similarity of those sets, averaged per chapter; a weighted sum over the
labels gives each verse a signed polarity score.
"""

from pathlib import Path

from verseval import (
    LABELS,
    PolarityWeights,
    align,
    cumulative_counts,
    jaccard_chapter,
    load_translation,
    polarity_chapter_mean,
    read_annotations,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
IDS = ("mtrans", "norton", "price")

corpus = align([load_translation(FIXTURES / "translations" / f"{t}.txt", t) for t in IDS])
sets = {t: read_annotations(FIXTURES / "annotations" / f"{t}.jsonl", threshold=0.5) for t in IDS}

print("per-chapter Jaccard agreement, norton vs price:")
for chapter in range(1, corpus.num_chapters + 1):
    score = jaccard_chapter(corpus, sets["norton"], sets["price"], chapter)
    print(f"  chapter {chapter}: {score:.3f}")

# label usage across the whole text
print("\ncumulative label counts (mtrans):")
counts = cumulative_counts(sets["mtrans"])
for label in LABELS:
    print(f"  {label:>11}: {counts[label]}")

# signed polarity trajectory: positive labels push up, negative pull down
weights = PolarityWeights.default()
print("\nmean weighted polarity by chapter:")
for t in IDS:
    trajectory = [polarity_chapter_mean(sets[t], c, weights)
                  for c in range(1, corpus.num_chapters + 1)]
    rendered = " ".join(f"{v:+.2f}" for v in trajectory)
    print(f"  {t:>7}: {rendered}")
