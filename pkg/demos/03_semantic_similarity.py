"""
Semantic similarity from verse embeddings
=========================================

Every verse annotation carries a unit-length sentence embedding; cosine
similarity between aligned verses measures how close two translations
stay in meaning.  Chapter-level means summarize the trend, and ranking
all verses by their combined pairwise score surfaces the places where
the translations agree or diverge the most.
"""

from pathlib import Path

from verseval import (
    align,
    cosine_chapter_stats,
    load_translation,
    rank_similarity,
    read_annotations,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
IDS = ("mtrans", "norton", "price")

corpus = align([load_translation(FIXTURES / "translations" / f"{t}.txt", t) for t in IDS])
sets = {t: read_annotations(FIXTURES / "annotations" / f"{t}.jsonl", threshold=0.5) for t in IDS}

print("chapter cosine mean(std), mtrans vs norton:")
for chapter in range(1, corpus.num_chapters + 1):
    mean, std = cosine_chapter_stats(corpus, sets["mtrans"], sets["norton"], chapter)
    print(f"  chapter {chapter}: {mean:.3f}({std:.3f})")


def show(records, heading):
    print(f"\n{heading}")
    for r in records:
        scores = ", ".join(f"{a}-{b}={v:.3f}" for (a, b), v in sorted(r.pair_scores.items()))
        print(f"  ({r.chapter},{r.index})  {scores}")
        for tid in IDS:
            print(f"    {tid:>7}: {r.texts[tid]}")


# the scalar rank score is the mean of the three pairwise cosines
show(rank_similarity(corpus, sets, 2, "most"), "most similar verses:")
show(rank_similarity(corpus, sets, 2, "least"), "least similar verses:")
