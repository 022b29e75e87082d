"""Reader for the consumer's corpus text format.

The format is defined by the consuming toolkit: UTF-8 text, one verse
per line, blank lines ignored, chapters either as ``chapterNN.txt``
files in a directory or introduced by ``### CHAPTER N`` delimiter lines
in a single file.  This module re-implements the reader against that
file contract; it deliberately does not import the consumer package.
"""

from __future__ import annotations

import re
from pathlib import Path

CHAPTER_FILE_RE = re.compile(r"^chapter(\d+)\.txt$", re.IGNORECASE)
CHAPTER_DELIMITER_RE = re.compile(r"^### CHAPTER (\d+)$")


class CorpusFormatError(ValueError):
    pass


def read_corpus(path) -> list[list[str]]:
    """Return chapters as lists of verse strings, 1-based order."""
    path = Path(path)
    if path.is_dir():
        chapters = _read_directory(path)
    elif path.is_file():
        chapters = _read_single_file(path)
    else:
        raise CorpusFormatError(f"{path}: no such file or directory")
    if not chapters or not all(chapters):
        raise CorpusFormatError(f"{path}: corpus has an empty chapter or no verses")
    return chapters


def _read_directory(path: Path) -> list[list[str]]:
    numbered = []
    for entry in path.iterdir():
        m = CHAPTER_FILE_RE.match(entry.name)
        if m:
            numbered.append((int(m.group(1)), entry))
    numbered.sort()
    if [n for n, _ in numbered] != list(range(1, len(numbered) + 1)):
        raise CorpusFormatError(f"{path}: chapter files are not contiguous from 1")
    return [_verses(p.read_text(encoding="utf-8-sig")) for _, p in numbered]


def _read_single_file(path: Path) -> list[list[str]]:
    chapters: list[list[str]] = []
    current: list[str] | None = None
    for line in path.read_text(encoding="utf-8-sig").splitlines():
        stripped = line.strip()
        m = CHAPTER_DELIMITER_RE.match(stripped)
        if m:
            if int(m.group(1)) != len(chapters) + 1 or (not chapters and current):
                raise CorpusFormatError(f"{path}: malformed chapter delimiters")
            current = []
            chapters.append(current)
        elif stripped:
            if current is None:
                current = []
            current.append(stripped)
    if not chapters and current:
        chapters.append(current)
    return chapters


def _verses(text: str) -> list[str]:
    return [line.strip() for line in text.splitlines() if line.strip()]
