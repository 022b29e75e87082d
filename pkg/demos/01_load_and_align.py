"""
Loading translations and aligning them verse-by-verse
=====================================================

Every analysis starts from plain text files with one verse per line and
"### CHAPTER N" delimiter lines.  Loading normalizes whitespace and
validates the chapter structure; aligning matches verse i of one
translation with verse i of every other.
"""

from pathlib import Path

from verseval import align, load_translation

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

# load the three bundled translations of the same synthetic source text
translations = [
    load_translation(FIXTURES / "translations" / f"{tid}.txt", tid)
    for tid in ("mtrans", "norton", "price")
]

for text in translations:
    print(f"{text.translation_id}: {text.num_chapters} chapters, "
          f"verse counts {text.verse_counts}")

# strict alignment insists on equal verse counts per chapter
corpus = align(translations, policy="strict")
print(f"\naligned: {corpus.num_chapters} chapters, "
      f"{sum(corpus.effective_counts)} aligned verses per translation")

# the same verse in all three translations
for tid in corpus.translation_ids:
    print(f"  (2,3) {tid:>7}: {corpus.translation(tid).verse(2, 3).text}")
