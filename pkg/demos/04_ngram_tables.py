"""
N-gram vocabulary profiles
==========================

Bigram and trigram counts (after stopword removal) sketch each
translation's vocabulary habits.  Conditioning the count on a predicted
sentiment shows which word sequences carry that sentiment.
"""

from pathlib import Path

from verseval import (
    align,
    extract_topk,
    load_stopwords,
    load_translation,
    read_annotations,
    sentiment_topk,
    tokenize,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

text = load_translation(FIXTURES / "translations" / "norton.txt", "norton")
annotations = read_annotations(FIXTURES / "annotations" / "norton.jsonl", threshold=0.5)

stopwords = load_stopwords()  # bundled English list
sequences = [tokenize(v, stopwords) for v in text.iter_verses()]

print("top 5 bigrams (norton):")
for tokens, count in extract_topk(sequences, n=2, k=5).entries:
    print(f"  {' '.join(tokens):<24} {count}")

print("\ntop 5 trigrams (norton):")
for tokens, count in extract_topk(sequences, n=3, k=5).entries:
    print(f"  {' '.join(tokens):<32} {count}")

# same counting, restricted to verses predicted as "joking"
print("\ntop 5 joking bigrams (norton):")
for tokens, count in sentiment_topk(sequences, annotations, "joking", n=2, k=5).entries:
    print(f"  {' '.join(tokens):<24} {count}")
