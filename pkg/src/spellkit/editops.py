"""Edit distance, edit-type classification and candidate generation.

Distance is optimal string alignment (restricted Damerau-Levenshtein):
insertion, deletion, substitution and adjacent transposition each cost 1,
and no substring is edited twice.  Candidate generation uses a symmetric
deletion-neighborhood index so million-word lexicons are never scanned per
query; every index hit is verified with the real distance.
"""

from __future__ import annotations

import hashlib
import pickle
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from pathlib import Path

import numpy as np

from ._kernels import encode, osa_codes, osa_codes_bounded, osa_codes_many
from .errors import ContractViolation
from .lexicon import Lexicon

INDEX_CACHE_VERSION = 1


class EditType(str, Enum):
    SUBSTITUTION = "substitution"
    INSERTION = "insertion"
    DELETION = "deletion"
    TRANSPOSITION = "transposition"
    MIXED = "mixed"


@dataclass
class Candidate:
    """A lexicon word near the query; scoring fields are filled later."""

    word: str
    distance: int
    edit_type: EditType
    contextual_score: float | None = None
    perto_match: bool | None = None


def osa_distance(a: str, b: str) -> int:
    return int(osa_codes(encode(a), encode(b)))


def osa_distance_bounded(a: str, b: str, max_dist: int) -> int:
    """Distance if it is at most ``max_dist``, else ``max_dist + 1``."""
    return int(osa_codes_bounded(encode(a), encode(b), max_dist))


def _minimal_script_types(a: str, b: str, budget: int) -> set[frozenset[EditType]]:
    """Operation-type sets over all minimal-cost alignments within budget.

    Consuming equal characters greedily is exact here: matching never
    increases alignment cost, and a minimal script never edits a matched
    pair (any such op could be dropped for a cheaper script).
    """
    found: set[frozenset[EditType]] = set()

    def rec(i: int, j: int, left: int, used: frozenset[EditType]) -> None:
        # consume the common prefix for free
        while i < len(a) and j < len(b) and a[i] == b[j]:
            i += 1
            j += 1
        if i == len(a) and j == len(b):
            if left == 0:
                found.add(used)
            return
        if left == 0:
            return
        if (
            i + 1 < len(a)
            and j + 1 < len(b)
            and a[i] == b[j + 1]
            and a[i + 1] == b[j]
        ):
            rec(i + 2, j + 2, left - 1, used | {EditType.TRANSPOSITION})
        if i < len(a) and j < len(b):
            rec(i + 1, j + 1, left - 1, used | {EditType.SUBSTITUTION})
        if i < len(a):
            rec(i + 1, j, left - 1, used | {EditType.DELETION})
        if j < len(b):
            rec(i, j + 1, left - 1, used | {EditType.INSERTION})

    rec(0, 0, budget, frozenset())
    return found


_TYPE_PRIORITY = (
    EditType.SUBSTITUTION,
    EditType.TRANSPOSITION,
    EditType.INSERTION,
    EditType.DELETION,
)


def classify_edit(original: str, variant: str) -> EditType:
    """Single operation type at distance 1; at distance 2 the homogeneous
    type when some minimal alignment uses only one operation, else Mixed."""
    dist = osa_distance(original, variant)
    if dist == 0 or dist > 2:
        raise ContractViolation(f"classify_edit requires distance 1 or 2, got {dist}")
    type_sets = _minimal_script_types(original, variant, dist)
    homogeneous = {next(iter(s)) for s in type_sets if len(s) == 1}
    for etype in _TYPE_PRIORITY:
        if etype in homogeneous:
            return etype
    return EditType.MIXED


@dataclass
class PackedLexicon:
    """Lexicon entries packed into flat codepoint arrays for batch kernels."""

    words: list[str]
    flat: np.ndarray
    starts: np.ndarray
    lengths: np.ndarray

    @classmethod
    def build(cls, lex: Lexicon) -> "PackedLexicon":
        words = sorted(lex.entries)
        lengths = np.array([len(w) for w in words], dtype=np.int64)
        starts = np.zeros(len(words), dtype=np.int64)
        if len(words):
            np.cumsum(lengths[:-1], out=starts[1:])
        flat = np.empty(int(lengths.sum()), dtype=np.int32)
        for w, s, ln in zip(words, starts, lengths):
            flat[s : s + ln] = [ord(c) for c in w]
        return cls(words=words, flat=flat, starts=starts, lengths=lengths)


def full_scan_candidates(word: str, packed: PackedLexicon, max_dist: int) -> list[tuple[str, int]]:
    """Distance of every lexicon entry to ``word`` (the brute-force route)."""
    if not packed.words:
        return []
    out = np.empty(len(packed.words), dtype=np.int64)
    osa_codes_many(encode(word), packed.flat, packed.starts, packed.lengths, max_dist, out)
    hits = []
    for k in np.nonzero(out <= max_dist)[0]:
        w = packed.words[k]
        if w != word:
            hits.append((w, int(out[k])))
    hits.sort(key=lambda t: (t[1], t[0]))
    return hits


def _deletes(word: str, max_deletes: int) -> set[str]:
    """All strings reachable by deleting up to ``max_deletes`` characters."""
    variants = {word}
    frontier = {word}
    for _ in range(max_deletes):
        nxt = set()
        for w in frontier:
            for i in range(len(w)):
                d = w[:i] + w[i + 1 :]
                if d not in variants:
                    nxt.add(d)
        variants |= nxt
        frontier = nxt
    return variants


class CandidateIndex:
    """Symmetric-delete index: exact within ``max_dist``.

    If osa(a, b) <= d, some string reachable by <= d deletions from each of
    a and b coincides, so bucket intersection plus distance verification
    never misses a candidate.
    """

    def __init__(self, lex: Lexicon, max_dist: int = 2):
        if max_dist not in (1, 2):
            raise ContractViolation(f"max_dist must be 1 or 2, got {max_dist}")
        self.lexicon = lex
        self.max_dist = max_dist
        self.words = sorted(lex.entries)
        self.buckets: dict[str, list[int]] = {}
        for idx, word in enumerate(self.words):
            for variant in _deletes(word, max_dist):
                self.buckets.setdefault(variant, []).append(idx)

    def lookup(self, word: str, max_dist: int | None = None) -> list[tuple[str, int]]:
        """Lexicon members within ``max_dist`` of ``word``, with distances,
        ordered by (distance, word); the query itself is excluded."""
        d = self.max_dist if max_dist is None else max_dist
        if d > self.max_dist:
            raise ContractViolation(
                f"index built for max_dist={self.max_dist}, asked for {d}"
            )
        seen: set[int] = set()
        for variant in _deletes(word, d):
            for idx in self.buckets.get(variant, ()):
                seen.add(idx)
        query = encode(word)
        hits = []
        for idx in seen:
            cand = self.words[idx]
            if cand == word:
                continue
            dist = int(osa_codes_bounded(query, encode(cand), d))
            if dist <= d:
                hits.append((cand, dist))
        hits.sort(key=lambda t: (t[1], t[0]))
        return hits

    # -- on-disk cache -----------------------------------------------------

    def save(self, path: str | Path) -> None:
        payload = {
            "version": INDEX_CACHE_VERSION,
            "lexicon_hash": lexicon_hash(self.lexicon),
            "max_dist": self.max_dist,
            "words": self.words,
            "buckets": self.buckets,
        }
        with open(path, "wb") as fh:
            pickle.dump(payload, fh, protocol=pickle.HIGHEST_PROTOCOL)

    @classmethod
    def load(cls, path: str | Path, lex: Lexicon, max_dist: int = 2) -> "CandidateIndex":
        """Load a cached index; silently rebuilds when stale or mismatched."""
        try:
            with open(path, "rb") as fh:
                payload = pickle.load(fh)
        except (OSError, pickle.UnpicklingError, EOFError):
            return cls(lex, max_dist)
        if (
            payload.get("version") != INDEX_CACHE_VERSION
            or payload.get("lexicon_hash") != lexicon_hash(lex)
            or payload.get("max_dist") != max_dist
        ):
            return cls(lex, max_dist)
        index = cls.__new__(cls)
        index.lexicon = lex
        index.max_dist = max_dist
        index.words = payload["words"]
        index.buckets = payload["buckets"]
        return index


def lexicon_hash(lex: Lexicon) -> str:
    digest = hashlib.sha256()
    for word in sorted(lex.entries):
        digest.update(word.encode("utf-8"))
        digest.update(b"\x00")
    return digest.hexdigest()


@lru_cache(maxsize=8)
def _index_for(entries: frozenset[str], max_dist: int) -> CandidateIndex:
    return CandidateIndex(Lexicon(entries=entries), max_dist)


def generate_candidates(
    word: str,
    lex: Lexicon | CandidateIndex,
    max_dist: int = 2,
) -> list[Candidate]:
    """Exactly the lexicon members within ``max_dist``, annotated with their
    minimal distance and edit type, ordered by (distance, word)."""
    if max_dist not in (1, 2):
        raise ContractViolation(f"max_dist must be 1 or 2, got {max_dist}")
    if isinstance(lex, CandidateIndex):
        index = lex
    else:
        index = _index_for(lex.entries, max_dist)
    return [
        Candidate(word=w, distance=dist, edit_type=classify_edit(word, w))
        for w, dist in index.lookup(word, max_dist)
    ]
