"""Chapter/verse corpus loading, normalization and positional alignment.

A translation is plain UTF-8 text with one verse per line (blank lines
ignored), supplied either as a directory of per-chapter files
(``chapter01.txt`` .. ``chapterNN.txt``) or as a single file whose chapters
are introduced by delimiter lines of the form ``### CHAPTER N``.  A file
with no delimiter lines is treated as a single chapter.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import CorpusError

CHAPTER_FILE_RE = re.compile(r"^chapter(\d+)\.txt$", re.IGNORECASE)
DEFAULT_CHAPTER_DELIMITER = re.compile(r"^### CHAPTER (\d+)$")


@dataclass(frozen=True)
class Verse:
    """One normalized line of translated text.

    ``chapter`` and ``index`` are 1-based; ``text`` carries no surrounding
    whitespace and no line breaks.
    """

    translation_id: str
    chapter: int
    index: int
    text: str


@dataclass(frozen=True)
class TranslationText:
    """All verses of one translation, addressable by (chapter, index)."""

    translation_id: str
    chapters: tuple[tuple[Verse, ...], ...]

    def __post_init__(self):
        if not self.chapters:
            raise CorpusError(f"translation {self.translation_id!r}: zero verses")
        for c, chapter in enumerate(self.chapters, start=1):
            if not chapter:
                raise CorpusError(
                    f"translation {self.translation_id!r}: chapter {c} has zero verses"
                )
            for i, verse in enumerate(chapter, start=1):
                if verse.chapter != c or verse.index != i:
                    raise CorpusError(
                        f"translation {self.translation_id!r}: verse numbering broken "
                        f"at chapter {c} index {i}"
                    )
                if verse.translation_id != self.translation_id:
                    raise CorpusError(
                        f"verse ({c},{i}) carries translation_id "
                        f"{verse.translation_id!r}, expected {self.translation_id!r}"
                    )
                if not verse.text or verse.text != verse.text.strip():
                    raise CorpusError(
                        f"translation {self.translation_id!r}: chapter {c} verse {i} "
                        "is empty or not whitespace-trimmed"
                    )
                if len(verse.text.splitlines()) != 1:
                    raise CorpusError(
                        f"translation {self.translation_id!r}: chapter {c} verse {i} "
                        "contains a line break"
                    )

    @classmethod
    def from_chapters(cls, translation_id: str, chapter_texts) -> "TranslationText":
        """Build from a list of chapters, each a list of verse strings."""
        chapters = tuple(
            tuple(
                Verse(translation_id, c, i, text)
                for i, text in enumerate(lines, start=1)
            )
            for c, lines in enumerate(chapter_texts, start=1)
        )
        return cls(translation_id, chapters)

    @property
    def num_chapters(self) -> int:
        return len(self.chapters)

    @property
    def verse_counts(self) -> tuple[int, ...]:
        return tuple(len(ch) for ch in self.chapters)

    def verse(self, chapter: int, index: int) -> Verse:
        if not 1 <= chapter <= self.num_chapters:
            raise CorpusError(
                f"chapter {chapter} out of range 1..{self.num_chapters}"
            )
        ch = self.chapters[chapter - 1]
        if not 1 <= index <= len(ch):
            raise CorpusError(
                f"verse index {index} out of range 1..{len(ch)} in chapter {chapter}"
            )
        return ch[index - 1]

    def iter_verses(self):
        for chapter in self.chapters:
            yield from chapter

    def verse_keys(self) -> set[tuple[int, int]]:
        return {(v.chapter, v.index) for v in self.iter_verses()}


@dataclass(frozen=True)
class AlignedCorpus:
    """Two or more translations aligned positionally (verse i <-> verse i).

    Under the ``truncate`` policy each chapter is cut to the minimum verse
    count across translations; ``warnings`` records what was dropped.
    """

    translations: tuple[TranslationText, ...]
    policy: str
    effective_counts: tuple[int, ...]
    warnings: tuple[str, ...] = field(default=())

    @property
    def num_chapters(self) -> int:
        return len(self.effective_counts)

    @property
    def translation_ids(self) -> tuple[str, ...]:
        return tuple(t.translation_id for t in self.translations)

    def translation(self, translation_id: str) -> TranslationText:
        for t in self.translations:
            if t.translation_id == translation_id:
                return t
        raise CorpusError(f"unknown translation_id {translation_id!r}")

    def verse_count(self, chapter: int) -> int:
        if not 1 <= chapter <= self.num_chapters:
            raise CorpusError(f"chapter {chapter} out of range 1..{self.num_chapters}")
        return self.effective_counts[chapter - 1]

    def iter_keys(self):
        """All aligned (chapter, index) keys in ascending order."""
        for c, n in enumerate(self.effective_counts, start=1):
            for i in range(1, n + 1):
                yield (c, i)


def segment_paragraphs(raw: str) -> list[str]:
    """Split raw text into verse strings: one per non-blank line, trimmed."""
    return [line.strip() for line in raw.splitlines() if line.strip()]


def _read_text(path: Path) -> str:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise CorpusError(f"cannot read {path}: {exc}") from exc
    try:
        # utf-8-sig drops a leading BOM if present
        return data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise CorpusError(f"{path} is not valid UTF-8: {exc}") from exc


def _chapters_from_single_file(path: Path, delimiter: re.Pattern) -> list[list[str]]:
    lines = _read_text(path).splitlines()
    chapters: list[list[str]] = []
    current: list[str] | None = None
    for line in lines:
        stripped = line.strip()
        m = delimiter.match(stripped)
        if m:
            number = int(m.group(1))
            if chapters and current is None:  # pragma: no cover
                raise CorpusError(f"{path}: internal chapter parse error")
            if not chapters and current is not None:
                raise CorpusError(
                    f"{path}: verse text before first chapter delimiter"
                )
            if number != len(chapters) + 1:
                raise CorpusError(
                    f"{path}: non-contiguous chapter numbering, found chapter "
                    f"{number} after {len(chapters)} chapter(s)"
                )
            current = []
            chapters.append(current)
        elif stripped:
            if current is None:
                # no delimiter lines yet: whole file is chapter 1 unless a
                # delimiter shows up later, which is then an error
                current = []
            current.append(stripped)
    if not chapters and current is not None:
        chapters.append(current)
    return chapters


def _chapters_from_directory(path: Path) -> list[list[str]]:
    numbered: list[tuple[int, Path]] = []
    for entry in path.iterdir():
        m = CHAPTER_FILE_RE.match(entry.name)
        if m:
            numbered.append((int(m.group(1)), entry))
    if not numbered:
        raise CorpusError(f"{path}: no chapterNN.txt files found")
    numbered.sort()
    numbers = [n for n, _ in numbered]
    if numbers != list(range(1, len(numbers) + 1)):
        raise CorpusError(
            f"{path}: non-contiguous chapter numbering {numbers}, expected 1..{len(numbers)}"
        )
    return [segment_paragraphs(_read_text(p)) for _, p in numbered]


def load_translation(
    path,
    translation_id: str,
    chapter_delimiter: re.Pattern | str | None = None,
) -> TranslationText:
    """Load one translation from a file or a directory of chapter files.

    Raises :class:`CorpusError` on unreadable input, invalid UTF-8, zero
    verses after normalization, or non-contiguous chapter numbering.
    """
    path = Path(path)
    if isinstance(chapter_delimiter, str):
        chapter_delimiter = re.compile(chapter_delimiter)
    delimiter = chapter_delimiter or DEFAULT_CHAPTER_DELIMITER
    if path.is_dir():
        chapter_texts = _chapters_from_directory(path)
    elif path.is_file():
        chapter_texts = _chapters_from_single_file(path, delimiter)
    else:
        raise CorpusError(f"{path}: no such file or directory")
    if not any(chapter_texts):
        raise CorpusError(f"{path}: zero verses after normalization")
    for c, lines in enumerate(chapter_texts, start=1):
        if not lines:
            raise CorpusError(f"{path}: chapter {c} has zero verses")
    return TranslationText.from_chapters(translation_id, chapter_texts)


def dump_translation(text: TranslationText, path) -> None:
    """Write the normalized corpus dump; ``load_translation`` reads it back
    to an identical :class:`TranslationText`."""
    path = Path(path)
    lines: list[str] = []
    for c, chapter in enumerate(text.chapters, start=1):
        lines.append(f"### CHAPTER {c}")
        lines.extend(v.text for v in chapter)
        lines.append("")
    path.write_text("\n".join(lines), encoding="utf-8")


def align(translations, policy: str = "strict") -> AlignedCorpus:
    """Positionally align two or more translations.

    ``strict`` requires equal verse counts per chapter; ``truncate`` cuts
    each chapter to the minimum count and records a warning per chapter
    that dropped verses.  A chapter-count mismatch is always fatal.
    """
    translations = tuple(translations)
    if len(translations) < 2:
        raise CorpusError("alignment needs at least 2 translations")
    if policy not in ("strict", "truncate"):
        raise CorpusError(f"unknown alignment policy {policy!r}")
    ids = [t.translation_id for t in translations]
    if len(set(ids)) != len(ids):
        raise CorpusError(f"duplicate translation ids in {ids}")

    n_chapters = translations[0].num_chapters
    for t in translations[1:]:
        if t.num_chapters != n_chapters:
            raise CorpusError(
                f"chapter-count mismatch: {ids[0]!r} has {n_chapters}, "
                f"{t.translation_id!r} has {t.num_chapters}"
            )

    effective: list[int] = []
    warnings: list[str] = []
    for c in range(1, n_chapters + 1):
        counts = {t.translation_id: len(t.chapters[c - 1]) for t in translations}
        minimum = min(counts.values())
        if policy == "strict":
            if len(set(counts.values())) != 1:
                raise CorpusError(
                    f"verse-count mismatch chapter {c}: {counts} (strict policy)"
                )
            effective.append(minimum)
        else:
            effective.append(minimum)
            dropped = {tid: n - minimum for tid, n in counts.items() if n > minimum}
            if dropped:
                total = sum(dropped.values())
                detail = ", ".join(f"{tid}: {n}" for tid, n in sorted(dropped.items()))
                warnings.append(
                    f"chapter {c}: truncated to {minimum} verses, dropped {total} ({detail})"
                )
    return AlignedCorpus(translations, policy, tuple(effective), tuple(warnings))
