"""Orthographic similarity codes for Persian words.

Visually confusable letters share one code symbol; a word's code is the
per-character concatenation of symbols, so equal codes signal shape-level
similarity.  The grouping ships as data (``data/perto_table.json``) and can
be swapped out to test alternative groupings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path


@dataclass(frozen=True)
class PertoTable:
    """Character-to-code mapping; every character in exactly one group."""

    mapping: dict[str, str]

    @classmethod
    def from_groups(cls, groups: dict[str, list[str]]) -> "PertoTable":
        mapping: dict[str, str] = {}
        for code, chars in groups.items():
            for ch in chars:
                if ch in mapping:
                    raise ValueError(f"character {ch!r} assigned to two codes")
                mapping[ch] = code
        return cls(mapping=mapping)

    @classmethod
    def load(cls, path: str | Path) -> "PertoTable":
        with open(path, encoding="utf-8") as fh:
            return cls.from_groups(json.load(fh))

    @classmethod
    def default(cls) -> "PertoTable":
        return _default_table()

    def characters(self) -> list[str]:
        return sorted(self.mapping)


_DEFAULT: PertoTable | None = None


def _default_table() -> PertoTable:
    global _DEFAULT
    if _DEFAULT is None:
        text = resources.files("spellkit").joinpath("data/perto_table.json").read_text("utf-8")
        _DEFAULT = PertoTable.from_groups(json.loads(text))
    return _DEFAULT


def perto_code(word: str, table: PertoTable | None = None) -> str:
    """Concatenated code symbols in logical character order.

    Characters outside the table (digits, Latin, ZWNJ) map to themselves,
    so the code length always equals the word's character count and
    unmapped characters only match when identical.
    """
    t = table or _default_table()
    return "".join(t.mapping.get(ch, ch) for ch in word)


def perto_match(a: str, b: str, table: PertoTable | None = None) -> bool:
    """True iff both words hash to the same code (implies equal lengths)."""
    if len(a) != len(b):
        return False
    return perto_code(a, table) == perto_code(b, table)
