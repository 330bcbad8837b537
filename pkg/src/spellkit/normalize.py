"""Persian text canonicalization, sentence segmentation and tokenization.

Normalization applies four data-driven rule families: Arabic-to-Persian
character mapping, diacritic removal, kashida removal, and pseudo-space
repair (internal word-boundary whitespace replaced by ZWNJ for a finite
affix table).  All tables ship as editable JSON so the exact codepoint
sets are auditable; see ``data/normalization.json``.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

ZWNJ = "‌"

# Any codepoint in these blocks marks a token as Persian/Arabic script and
# therefore subject to spell checking; everything else passes through.
_ARABIC_BLOCKS = (
    (0x0600, 0x06FF),
    (0x0750, 0x077F),
    (0x08A0, 0x08FF),
    (0xFB50, 0xFDFF),
    (0xFE70, 0xFEFF),
)

SENTENCE_DELIMITERS = frozenset({".", "!", "?", "؟", "۔"})  # . ! ? ؟ ۔


@dataclass(frozen=True)
class NormalizationConfig:
    """Codepoint tables for the four normalization rule families."""

    arabic_map: dict[str, str]
    diacritics: frozenset[str]
    kashida: frozenset[str]
    prefixes: tuple[str, ...]
    suffixes: tuple[str, ...]

    @classmethod
    def from_dict(cls, raw: dict) -> "NormalizationConfig":
        pseudo = raw.get("pseudo_space", {})
        return cls(
            arabic_map=dict(raw.get("arabic_map", {})),
            diacritics=frozenset(raw.get("diacritics", [])),
            kashida=frozenset(raw.get("kashida", [])),
            prefixes=tuple(pseudo.get("prefixes", [])),
            suffixes=tuple(pseudo.get("suffixes", [])),
        )

    @classmethod
    def load(cls, path: str | Path) -> "NormalizationConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    @classmethod
    def default(cls) -> "NormalizationConfig":
        return _default_config()


_DEFAULT: NormalizationConfig | None = None


def _default_config() -> NormalizationConfig:
    global _DEFAULT
    if _DEFAULT is None:
        text = resources.files("spellkit").joinpath("data/normalization.json").read_text("utf-8")
        _DEFAULT = NormalizationConfig.from_dict(json.loads(text))
    return _DEFAULT


@dataclass(frozen=True)
class NormalizedText:
    content: str
    applied_rules: tuple[str, ...] = ()


@dataclass(frozen=True)
class Token:
    """One word unit; may contain ZWNJ, never unescaped whitespace."""

    surface: str
    index: int
    char_span: tuple[int, int]


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    source_span: tuple[int, int]

    @property
    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]


def normalize(raw: str, rules: NormalizationConfig | None = None) -> NormalizedText:
    """Apply all enabled normalization rules; idempotent."""
    cfg = rules or _default_config()
    text = raw
    applied: list[str] = []

    mapped = text.translate({ord(k): v for k, v in cfg.arabic_map.items()})
    if mapped != text:
        applied.append("arabic_map")
    text = mapped

    stripped = text.translate({ord(c): None for c in cfg.diacritics})
    if stripped != text:
        applied.append("diacritics")
    text = stripped

    dekashida = text.translate({ord(c): None for c in cfg.kashida})
    if dekashida != text:
        applied.append("kashida")
    text = dekashida

    repaired = _repair_pseudo_space(text, cfg)
    if repaired != text:
        applied.append("pseudo_space")
    text = repaired

    return NormalizedText(content=text, applied_rules=tuple(applied))


def _repair_pseudo_space(text: str, cfg: NormalizationConfig) -> str:
    # affix as a standalone word next to a single space; space becomes ZWNJ
    for prefix in cfg.prefixes:
        pattern = r"(?<!\S)" + re.escape(prefix) + r" (?=\S)"
        text = re.sub(pattern, prefix + ZWNJ, text)
    for suffix in cfg.suffixes:
        pattern = r"(?<=\S) " + re.escape(suffix) + r"(?!\S)"
        text = re.sub(pattern, ZWNJ + suffix, text)
    return text


def is_persian_script(token: str) -> bool:
    """True if any character falls in an Arabic-script Unicode block."""
    for ch in token:
        cp = ord(ch)
        for lo, hi in _ARABIC_BLOCKS:
            if lo <= cp <= hi:
                return True
    return False


def is_passthrough(token: str) -> bool:
    """Digits, Latin words, units, punctuation: never flagged as errors."""
    return not is_persian_script(token)


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P")


def tokenize(sentence_text: str, span_offset: int = 0) -> list[Token]:
    """Whitespace-delimited tokens with edge punctuation stripped.

    ZWNJ stays inside tokens.  Chunks that are pure punctuation are
    discarded.  Indices are consecutive from 0; spans index into the
    input string plus ``span_offset``.
    """
    tokens: list[Token] = []
    for match in re.finditer(r"\S+", sentence_text):
        chunk = match.group()
        start = match.start()
        lead = 0
        while lead < len(chunk) and _is_punct(chunk[lead]):
            lead += 1
        tail = len(chunk)
        while tail > lead and _is_punct(chunk[tail - 1]):
            tail -= 1
        core = chunk[lead:tail]
        if not core:
            continue
        tokens.append(
            Token(
                surface=core,
                index=len(tokens),
                char_span=(span_offset + start + lead, span_offset + start + tail),
            )
        )
    return tokens


def segment_sentences(text: NormalizedText | str) -> list[Sentence]:
    """Split on sentence-final punctuation; every non-delimiter character
    is covered by exactly one sentence span."""
    content = text.content if isinstance(text, NormalizedText) else text
    sentences: list[Sentence] = []
    pending_start: int | None = None
    seg_start = 0

    def flush(seg_end: int) -> None:
        nonlocal pending_start
        start = pending_start if pending_start is not None else seg_start
        toks = tokenize(content[seg_start:seg_end], span_offset=seg_start)
        if toks:
            sentences.append(Sentence(tokens=tuple(toks), source_span=(start, seg_end)))
            pending_start = None
        else:
            # tokenless stretch: fold its span into a neighbouring sentence
            if sentences and pending_start is None:
                prev = sentences[-1]
                sentences[-1] = Sentence(prev.tokens, (prev.source_span[0], seg_end))
            elif pending_start is None:
                pending_start = start

    for pos, ch in enumerate(content):
        if ch in SENTENCE_DELIMITERS:
            flush(pos)
            seg_start = pos + 1
    if seg_start < len(content):
        flush(len(content))
    return sentences


def sentence_from_surfaces(surfaces, span_offset: int = 0) -> Sentence:
    """Sentence over already-tokenized words, with single-space spans."""
    tokens = []
    pos = span_offset
    for i, surface in enumerate(surfaces):
        tokens.append(Token(surface=surface, index=i, char_span=(pos, pos + len(surface))))
        pos += len(surface) + 1
    end = max(span_offset, pos - 1)
    return Sentence(tokens=tuple(tokens), source_span=(span_offset, end))
