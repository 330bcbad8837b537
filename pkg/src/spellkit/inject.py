"""Synthetic error injection with reproducible gold records.

Per-class error budgets and the type/distance cell counts are fixed by
largest-remainder allocation before any sampling, so empirical proportions
match the InjectionSpec proportions up to integer rounding instead of drifting with sampling
noise.  All randomness flows through one seeded PCG64 generator: a fixed
seed yields a byte-identical corrupted corpus and gold file.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .detect import ErrorClass
from .editops import CandidateIndex, EditType, classify_edit, osa_distance
from .errors import ContractViolation
from .lexicon import Lexicon, contains
from .normalize import is_passthrough
from .perto import PertoTable

log = logging.getLogger(__name__)

EDIT_TYPES = (
    EditType.SUBSTITUTION,
    EditType.INSERTION,
    EditType.DELETION,
    EditType.TRANSPOSITION,
)

# per-class error-type percentages; renormalized at use
DEFAULT_TYPE_MIX = {
    ErrorClass.NON_WORD: {
        EditType.SUBSTITUTION: 49.1,
        EditType.INSERTION: 30.3,
        EditType.DELETION: 13.8,
        EditType.TRANSPOSITION: 6.8,
    },
    ErrorClass.REAL_WORD: {
        EditType.SUBSTITUTION: 47.8,
        EditType.INSERTION: 31.4,
        EditType.DELETION: 13.5,
        EditType.TRANSPOSITION: 7.3,
    },
}

# distances 3+ are out of scope; {1, 2} renormalized at use
DEFAULT_DISTANCE_MIX = {
    ErrorClass.NON_WORD: {1: 86.4, 2: 14.0},
    ErrorClass.REAL_WORD: {1: 85.5, 2: 12.6},
}

DEFAULT_MAX_ATTEMPTS = 50


def _renormalize(mix: dict) -> dict:
    total = float(sum(mix.values()))
    if total <= 0:
        raise ContractViolation("mix proportions must sum to a positive value")
    return {k: v / total for k, v in mix.items()}


@dataclass(frozen=True)
class InjectionSpec:
    nonword_per_10k: float = 120.0
    realword_per_10k: float = 29.0
    type_mix: dict = field(default_factory=lambda: DEFAULT_TYPE_MIX)
    distance_mix: dict = field(default_factory=lambda: DEFAULT_DISTANCE_MIX)
    rng_seed: int = 0
    max_attempts: int = DEFAULT_MAX_ATTEMPTS

    def __post_init__(self):
        if self.nonword_per_10k < 0 or self.realword_per_10k < 0:
            raise ContractViolation("error rates must be non-negative")
        for per_class in (self.type_mix, self.distance_mix):
            for mix in per_class.values():
                _renormalize(mix)

    @classmethod
    def from_dict(cls, data: dict) -> "InjectionSpec":
        kwargs = {}
        if "nonword_per_10k" in data:
            kwargs["nonword_per_10k"] = float(data["nonword_per_10k"])
        if "realword_per_10k" in data:
            kwargs["realword_per_10k"] = float(data["realword_per_10k"])
        if "rng_seed" in data:
            kwargs["rng_seed"] = int(data["rng_seed"])
        if "max_attempts" in data:
            kwargs["max_attempts"] = int(data["max_attempts"])
        if "type_mix" in data:
            kwargs["type_mix"] = {
                ErrorClass(cls_name): {EditType(t): float(v) for t, v in mix.items()}
                for cls_name, mix in data["type_mix"].items()
            }
        if "distance_mix" in data:
            kwargs["distance_mix"] = {
                ErrorClass(cls_name): {int(d): float(v) for d, v in mix.items()}
                for cls_name, mix in data["distance_mix"].items()
            }
        return cls(**kwargs)

    @classmethod
    def load(cls, path) -> "InjectionSpec":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


@dataclass(frozen=True)
class GoldRecord:
    sentence_id: int
    token_index: int
    original: str
    corrupted: str
    error_class: ErrorClass
    edit_type: EditType
    distance: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "sentence_id": self.sentence_id,
                "token_index": self.token_index,
                "original": self.original,
                "corrupted": self.corrupted,
                "error_class": self.error_class.value,
                "edit_type": self.edit_type.value,
                "distance": self.distance,
            },
            ensure_ascii=False,
        )

    @classmethod
    def from_json(cls, line: str) -> "GoldRecord":
        data = json.loads(line)
        return cls(
            sentence_id=int(data["sentence_id"]),
            token_index=int(data["token_index"]),
            original=data["original"],
            corrupted=data["corrupted"],
            error_class=ErrorClass(data["error_class"]),
            edit_type=EditType(data["edit_type"]),
            distance=int(data["distance"]),
        )


def largest_remainder(total: int, proportions: Sequence[float]) -> list[int]:
    """Integer counts summing to ``total``, proportional up to rounding."""
    if total < 0:
        raise ContractViolation("total must be non-negative")
    scale = float(sum(proportions))
    if scale <= 0:
        raise ContractViolation("proportions must sum to a positive value")
    exact = [total * p / scale for p in proportions]
    floors = [int(x) for x in exact]
    short = total - sum(floors)
    order = sorted(
        range(len(exact)), key=lambda i: (floors[i] - exact[i], i)
    )
    for i in order[:short]:
        floors[i] += 1
    return floors


def _allocate_cells(
    total: int, spec: InjectionSpec, error_class: ErrorClass
) -> list[tuple[ErrorClass, EditType, int, int]]:
    """(class, type, distance, count) cells via nested largest remainder."""
    type_mix = spec.type_mix[error_class]
    dist_mix = spec.distance_mix[error_class]
    types = [t for t in EDIT_TYPES if t in type_mix]
    type_counts = largest_remainder(total, [type_mix[t] for t in types])
    distances = sorted(dist_mix)
    cells = []
    for etype, tcount in zip(types, type_counts):
        dist_counts = largest_remainder(tcount, [dist_mix[d] for d in distances])
        for d, dcount in zip(distances, dist_counts):
            cells.append((error_class, etype, d, dcount))
    return cells


# -- random edits ------------------------------------------------------------


def _rand_sub(word: str, dist: int, alphabet: Sequence[str], rng) -> str:
    if len(word) < dist:
        return word
    positions = rng.choice(len(word), size=dist, replace=False)
    chars = list(word)
    for p in positions:
        choices = [c for c in alphabet if c != chars[p]]
        chars[p] = choices[rng.integers(len(choices))]
    return "".join(chars)


def _rand_ins(word: str, dist: int, alphabet: Sequence[str], rng) -> str:
    chars = list(word)
    for _ in range(dist):
        p = int(rng.integers(len(chars) + 1))
        chars.insert(p, alphabet[rng.integers(len(alphabet))])
    return "".join(chars)


def _rand_del(word: str, dist: int, rng) -> str:
    if len(word) <= dist:
        return word
    chars = list(word)
    for _ in range(dist):
        chars.pop(int(rng.integers(len(chars))))
    return "".join(chars)


def _rand_trans(word: str, dist: int, rng) -> str:
    chars = list(word)
    pairs = [i for i in range(len(chars) - 1) if chars[i] != chars[i + 1]]
    if dist == 1:
        if not pairs:
            return word
        i = pairs[int(rng.integers(len(pairs)))]
        chars[i], chars[i + 1] = chars[i + 1], chars[i]
        return "".join(chars)
    # two non-overlapping adjacent swaps
    options = [
        (i, j) for i in pairs for j in pairs if j >= i + 2
    ]
    if not options:
        return word
    i, j = options[int(rng.integers(len(options)))]
    chars[i], chars[i + 1] = chars[i + 1], chars[i]
    chars[j], chars[j + 1] = chars[j + 1], chars[j]
    return "".join(chars)


def _random_edit(
    word: str, etype: EditType, dist: int, alphabet: Sequence[str], rng
) -> str:
    if etype == EditType.SUBSTITUTION:
        return _rand_sub(word, dist, alphabet, rng)
    if etype == EditType.INSERTION:
        return _rand_ins(word, dist, alphabet, rng)
    if etype == EditType.DELETION:
        return _rand_del(word, dist, rng)
    return _rand_trans(word, dist, rng)


def _verified(original: str, corrupted: str, etype: EditType, dist: int) -> bool:
    if corrupted == original or not corrupted:
        return False
    if osa_distance(original, corrupted) != dist:
        return False
    return classify_edit(original, corrupted) == etype


def inject_errors(
    sentences: Sequence[Sequence[str]],
    spec: InjectionSpec,
    lex: Lexicon,
    index: CandidateIndex | None = None,
) -> tuple[list[list[str]], list[GoldRecord]]:
    """Corrupt at most one token per selected sentence; return the corpus
    copy and gold records.  Cells that cannot be satisfied for a chosen
    sentence are retried elsewhere and eventually skipped with a warning.
    """
    rng = np.random.default_rng(np.random.PCG64(spec.rng_seed))
    n = len(sentences)
    nonword_total = int(round(spec.nonword_per_10k * n / 10000.0))
    realword_total = int(round(spec.realword_per_10k * n / 10000.0))
    if nonword_total + realword_total > n:
        raise ContractViolation("error budget exceeds sentence count")

    cells = _allocate_cells(nonword_total, spec, ErrorClass.NON_WORD)
    cells += _allocate_cells(realword_total, spec, ErrorClass.REAL_WORD)

    # one flat assignment list, then one sentence drawn per slot
    slots: list[tuple[ErrorClass, EditType, int]] = []
    for error_class, etype, dist, count in cells:
        slots.extend([(error_class, etype, dist)] * count)

    available = list(range(n))
    rng.shuffle(available)
    alphabet = sorted(PertoTable.default().characters())
    if index is None:
        index = CandidateIndex(lex, max_dist=2)

    corrupted_corpus = [list(s) for s in sentences]
    gold: list[GoldRecord] = []
    cursor = 0

    for error_class, etype, dist in slots:
        placed = False
        attempts = 0
        while not placed and attempts < spec.max_attempts and cursor < len(available):
            attempts += 1
            sid = available[cursor]
            cursor += 1
            tokens = corrupted_corpus[sid]
            eligible = [
                i
                for i, tok in enumerate(tokens)
                if not is_passthrough(tok) and contains(lex, tok)
            ]
            if not eligible:
                continue
            order = rng.permutation(len(eligible))
            for k in order:
                ti = eligible[int(k)]
                word = tokens[ti]
                corrupted = _corrupt_word(
                    word, error_class, etype, dist, lex, index, alphabet, rng,
                    spec.max_attempts,
                )
                if corrupted is None:
                    continue
                tokens[ti] = corrupted
                gold.append(
                    GoldRecord(
                        sentence_id=sid,
                        token_index=ti,
                        original=word,
                        corrupted=corrupted,
                        error_class=error_class,
                        edit_type=etype,
                        distance=dist,
                    )
                )
                placed = True
                break
        if not placed:
            log.warning(
                "could not inject %s/%s/d%d error; slot skipped",
                error_class.value,
                etype.value,
                dist,
            )

    gold.sort(key=lambda g: g.sentence_id)
    return corrupted_corpus, gold


def _corrupt_word(
    word: str,
    error_class: ErrorClass,
    etype: EditType,
    dist: int,
    lex: Lexicon,
    index: CandidateIndex,
    alphabet: Sequence[str],
    rng,
    max_attempts: int,
) -> str | None:
    if error_class == ErrorClass.REAL_WORD:
        # lexicon neighbors of the right type and distance
        neighbors = [
            w
            for w, d in index.lookup(word, dist)
            if d == dist and classify_edit(word, w) == etype
        ]
        if not neighbors:
            return None
        return neighbors[int(rng.integers(len(neighbors)))]
    for _ in range(max_attempts):
        corrupted = _random_edit(word, etype, dist, alphabet, rng)
        if _verified(word, corrupted, etype, dist) and not contains(lex, corrupted):
            return corrupted
    return None


def save_gold(records: Sequence[GoldRecord], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")


def load_gold(path) -> list[GoldRecord]:
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(GoldRecord.from_json(line))
    return records


def save_corpus(sentences: Sequence[Sequence[str]], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for tokens in sentences:
            fh.write(" ".join(tokens) + "\n")


def load_corpus(path) -> list[list[str]]:
    sentences = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            tokens = line.split()
            if tokens:
                sentences.append(tokens)
    return sentences
