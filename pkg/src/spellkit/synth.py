"""Deterministic synthetic Persian corpus and lexicon for benchmarks.

The generator builds a vocabulary with controlled edit-distance geometry:

- "root" words (bases, fillers, glue) are mutually far apart (distance > 4),
  so no root is ever an accidental candidate for another;
- each base word carries lexicon-only variants for seven error cells
  (substitution d2, insertion/deletion/transposition at d1 and d2), giving
  real-word injection a guaranteed neighbor for those cells;
- substitution-at-distance-1 real-word errors come exclusively from
  engineered triples (original, confusable, decoy): the confusable is a
  same-code substitution of the original, and the decoy is the confusable
  plus a Latin letter, trained to tie the original's contextual score
  exactly.  A plain contextual argmax then resolves the tie toward the
  decoy by lexicographic order, while the orthographic gate recovers the
  original: the corpus makes the gate's benefit measurable by design.

Every sentence embeds its word in a dedicated filler frame, so the
four-gram model learns sharp context signatures and clean text produces
no false real-word flags.  All randomness flows through one seeded PCG64
generator; a fixed seed reproduces the corpus byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import encode, osa_codes_bounded
from .editops import EditType, classify_edit, osa_distance
from .lexicon import Lexicon, from_words
from .perto import PertoTable

ROOT_SEPARATION = 4  # roots pairwise farther than this
LATIN_MARKER = "x"  # sorts before Persian letters, so score ties resolve toward the decoy

BASE_COUNT = 40
TRIPLE_COUNT = 6
GLUE_COUNT = 12
GROUP_SIZE = 4
TRIPLE_SHARE = 0.015  # per-triple share of sentences, per twin

VARIANT_CELLS = (
    (EditType.SUBSTITUTION, 2),
    (EditType.INSERTION, 1),
    (EditType.INSERTION, 2),
    (EditType.DELETION, 1),
    (EditType.DELETION, 2),
    (EditType.TRANSPOSITION, 1),
    (EditType.TRANSPOSITION, 2),
)


@dataclass(frozen=True)
class Triple:
    """Engineered confusion: original, same-code confusable, tied decoy."""

    original: str
    confusable: str
    decoy: str


@dataclass(frozen=True)
class SynthCorpus:
    sentences: list[list[str]]
    lexicon: Lexicon
    bases: tuple[str, ...]
    triples: tuple[Triple, ...]
    variants: dict[str, dict[tuple[EditType, int], str]]


def _code_families(table: PertoTable) -> dict[str, list[str]]:
    by_code: dict[str, list[str]] = {}
    for ch, code in sorted(table.mapping.items()):
        by_code.setdefault(code, []).append(ch)
    families = {}
    for chars in by_code.values():
        for ch in chars:
            siblings = [c for c in chars if c != ch]
            if siblings:
                families[ch] = siblings
    return families


class _WordFactory:
    def __init__(self, rng, alphabet: list[str]):
        self.rng = rng
        self.alphabet = alphabet
        self.roots: list[np.ndarray] = []
        self.taken: set[str] = set()

    def _random_word(self, length: int) -> str:
        chars = []
        while len(chars) < length:
            ch = self.alphabet[int(self.rng.integers(len(self.alphabet)))]
            if chars and chars[-1] == ch:
                continue  # no adjacent repeats: transpositions always exist
            chars.append(ch)
        return "".join(chars)

    def _is_separated(self, word: str) -> bool:
        codes = encode(word)
        for other in self.roots:
            if osa_codes_bounded(codes, other, ROOT_SEPARATION) <= ROOT_SEPARATION:
                return False
        return True

    def new_root(self, min_len: int = 6, max_len: int = 8) -> str:
        while True:
            length = int(self.rng.integers(min_len, max_len + 1))
            word = self._random_word(length)
            if word in self.taken or not self._is_separated(word):
                continue
            self.roots.append(encode(word))
            self.taken.add(word)
            return word

    def claim(self, word: str) -> bool:
        """Reserve a derived (non-root) word; False if already taken."""
        if word in self.taken:
            return False
        self.taken.add(word)
        return True


def _make_variant(
    base: str,
    etype: EditType,
    dist: int,
    factory: _WordFactory,
    families: dict[str, list[str]],
    rng,
) -> str | None:
    for _ in range(60):
        chars = list(base)
        if etype == EditType.SUBSTITUTION:
            positions = [i for i, c in enumerate(chars) if c in families]
            if len(positions) < dist:
                return None
            picked = rng.choice(len(positions), size=dist, replace=False)
            for k in picked:
                i = positions[int(k)]
                sibs = families[chars[i]]
                chars[i] = sibs[int(rng.integers(len(sibs)))]
        elif etype == EditType.INSERTION:
            for _ in range(dist):
                pos = int(rng.integers(len(chars) + 1))
                chars.insert(pos, factory.alphabet[int(rng.integers(len(factory.alphabet)))])
        elif etype == EditType.DELETION:
            for _ in range(dist):
                chars.pop(int(rng.integers(len(chars))))
        else:
            pairs = [i for i in range(len(chars) - 1) if chars[i] != chars[i + 1]]
            if dist == 1:
                if not pairs:
                    return None
                i = pairs[int(rng.integers(len(pairs)))]
                chars[i], chars[i + 1] = chars[i + 1], chars[i]
            else:
                options = [(i, j) for i in pairs for j in pairs if j >= i + 2]
                if not options:
                    return None
                i, j = options[int(rng.integers(len(options)))]
                chars[i], chars[i + 1] = chars[i + 1], chars[i]
                chars[j], chars[j + 1] = chars[j + 1], chars[j]
        word = "".join(chars)
        if word == base or word in factory.taken:
            continue
        if osa_distance(base, word) != dist or classify_edit(base, word) != etype:
            continue
        factory.claim(word)
        return word
    return None


def _make_triple(factory: _WordFactory, families: dict[str, list[str]], rng) -> Triple:
    while True:
        original = factory.new_root()
        positions = [i for i in range(1, len(original)) if original[i] in families]
        if not positions:
            continue
        p = positions[int(rng.integers(len(positions)))]
        sibs = families[original[p]]
        confusable = (
            original[:p] + sibs[int(rng.integers(len(sibs)))] + original[p + 1 :]
        )
        decoy = LATIN_MARKER + confusable
        if not factory.claim(confusable):
            continue
        if not factory.claim(decoy):
            continue
        return Triple(original=original, confusable=confusable, decoy=decoy)


def generate(n_sentences: int, seed: int = 0) -> SynthCorpus:
    """Clean corpus plus lexicon; deterministic for a fixed seed."""
    rng = np.random.default_rng(np.random.PCG64(seed))
    table = PertoTable.default()
    alphabet = sorted(table.characters())
    families = _code_families(table)
    factory = _WordFactory(rng, alphabet)

    glue = [factory.new_root() for _ in range(GLUE_COUNT)]
    bases = [factory.new_root() for _ in range(BASE_COUNT)]
    groups = {b: [factory.new_root() for _ in range(GROUP_SIZE)] for b in bases}

    variants: dict[str, dict[tuple[EditType, int], str]] = {}
    for base in bases:
        cells = {}
        for etype, dist in VARIANT_CELLS:
            made = _make_variant(base, etype, dist, factory, families, rng)
            if made is not None:
                cells[(etype, dist)] = made
        variants[base] = cells

    triples = [_make_triple(factory, families, rng) for _ in range(TRIPLE_COUNT)]
    triple_groups = {
        t.original: [factory.new_root() for _ in range(GROUP_SIZE)] for t in triples
    }

    per_triple = max(1, int(round(TRIPLE_SHARE * n_sentences)))
    n_triple_sentences = 2 * per_triple * len(triples)
    n_base_sentences = max(0, n_sentences - n_triple_sentences)

    sentences: list[list[str]] = []

    def frame(word: str, group: list[str]) -> list[str]:
        g = [group[int(k)] for k in rng.choice(len(group), size=4, replace=False)]
        lead = glue[int(rng.integers(len(glue)))]
        return [lead, g[0], g[1], word, g[2], g[3]]

    for i in range(n_base_sentences):
        base = bases[i % len(bases)]
        sentences.append(frame(base, groups[base]))

    for triple in triples:
        group = triple_groups[triple.original]
        for _ in range(per_triple):
            shared = frame("\x00", group)
            slot = shared.index("\x00")
            twin_a = list(shared)
            twin_a[slot] = triple.original
            twin_b = list(shared)
            twin_b[slot] = triple.decoy
            sentences.append(twin_a)
            sentences.append(twin_b)

    order = rng.permutation(len(sentences))
    sentences = [sentences[int(k)] for k in order]
    sentences = sentences[:n_sentences]

    words = set(factory.taken)
    lexicon = from_words(sorted(words), source="synthetic")
    return SynthCorpus(
        sentences=sentences,
        lexicon=lexicon,
        bases=tuple(bases),
        triples=tuple(triples),
        variants=variants,
    )
