"""Reference dictionary: load, merge, and exact-membership queries.

Word-list format: UTF-8, one word per line, ``#`` starts a comment line,
blank lines are skipped.  Every entry is stored in normalizer-canonical
form so lookups succeed regardless of which codepoint variant the source
list used.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

from .errors import LexiconFormatError
from .normalize import NormalizationConfig, normalize, tokenize


@dataclass(frozen=True)
class Lexicon:
    entries: frozenset[str]
    source_counts: dict[str, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, word: str) -> bool:
        return word in self.entries


def load_lexicon(
    stream: IO[bytes] | str | Path,
    source: str = "wordlist",
    rules: NormalizationConfig | None = None,
) -> Lexicon:
    """Read a word list; returns a lexicon tallying entries per source."""
    if isinstance(stream, (str, Path)):
        with open(stream, "rb") as fh:
            return load_lexicon(fh, source=source or str(stream), rules=rules)
    entries: set[str] = set()
    for lineno, raw_line in enumerate(stream, start=1):
        try:
            line = raw_line.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise LexiconFormatError(f"invalid UTF-8 ({exc.reason})", lineno) from exc
        word = line.strip()
        if not word or word.startswith("#"):
            continue
        entries.add(normalize(word, rules).content)
    return Lexicon(entries=frozenset(entries), source_counts={source: len(entries)})


def from_words(words: Iterable[str], source: str = "inline") -> Lexicon:
    """Build a lexicon from already-normalized words (mainly for tests)."""
    entries = frozenset(words)
    return Lexicon(entries=entries, source_counts={source: len(entries)})


def merge(general: Lexicon, specialized: Lexicon) -> Lexicon:
    """Set union; no term is included more than once."""
    counts = dict(general.source_counts)
    for src, n in specialized.source_counts.items():
        counts[src] = counts.get(src, 0) + n
    return Lexicon(entries=general.entries | specialized.entries, source_counts=counts)


def contains(lex: Lexicon, word: str) -> bool:
    """Exact membership; hash-set lookup."""
    return word in lex.entries


def build_from_corpus(
    stream: IO[bytes] | str | Path,
    source: str = "corpus",
    rules: NormalizationConfig | None = None,
) -> Lexicon:
    """Extract a lexicon from raw text: every distinct normalized token."""
    if isinstance(stream, (str, Path)):
        with open(stream, "rb") as fh:
            return build_from_corpus(fh, source=source or str(stream), rules=rules)
    data = stream.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise LexiconFormatError(f"invalid UTF-8 ({exc.reason})") from exc
    normalized = normalize(text, rules).content
    entries = {tok.surface for tok in tokenize(normalized)}
    return Lexicon(entries=frozenset(entries), source_counts={source: len(entries)})


def save_lexicon(lex: Lexicon, path: str | Path) -> None:
    """Write entries sorted, one per line (stable on disk)."""
    with open(path, "w", encoding="utf-8") as fh:
        for word in sorted(lex.entries):
            fh.write(word + "\n")
