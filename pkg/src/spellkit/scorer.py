"""Contextual probability scoring for masked token positions.

Two interchangeable backends implement the same interface: a weighted
bidirectional four-gram model trained locally, and an HTTP adapter for any
masked-LM service honoring the wire contract (see ``WIRE_PROTOCOL``).
Scores are always renormalized over the requested word set, because
detection and correction only ever compare within that set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Protocol, Sequence

import requests

from .errors import (
    ContractViolation,
    ScorerMissingWordError,
    ScorerProtocolError,
    ScorerTransportError,
)

MODEL_FORMAT = "spellkit-fourgram"
MODEL_VERSION = 1
MAX_ORDER = 4

# weights indexed by order 4, 3, 2, 1; must sum to 1 per direction
DEFAULT_WEIGHTS = (0.4, 0.3, 0.2, 0.1)
DEFAULT_ADD_K = 0.01

# internal sentence sentinels; never appear in \S+ tokens
BOS = "\x02"
EOS = "\x03"

WIRE_PROTOCOL = {
    "request": {"tokens": ["..."], "mask_index": 0, "candidates": ["..."]},
    "response": {"scores": {"word": 0.0}},
}


@dataclass(frozen=True)
class MaskedQuery:
    """One token position hidden; score each word of interest there."""

    tokens: tuple[str, ...]
    mask_index: int
    vocabulary_of_interest: tuple[str, ...]

    def __post_init__(self):
        if not (0 <= self.mask_index < len(self.tokens)):
            raise ContractViolation(
                f"mask_index {self.mask_index} out of range for "
                f"{len(self.tokens)} tokens"
            )
        if not self.vocabulary_of_interest:
            raise ContractViolation("vocabulary_of_interest is empty")
        if len(set(self.vocabulary_of_interest)) != len(self.vocabulary_of_interest):
            raise ContractViolation("vocabulary_of_interest contains duplicates")


@dataclass(frozen=True)
class ScoreDistribution:
    """Probabilities over exactly the requested words, summing to 1."""

    scores: dict[str, float]

    def best(self) -> tuple[str, float]:
        """Highest-scored word; ties broken lexicographically."""
        word = min(self.scores, key=lambda w: (-self.scores[w], w))
        return word, self.scores[word]

    def __getitem__(self, word: str) -> float:
        return self.scores[word]


class Scorer(Protocol):
    def score(self, query: MaskedQuery) -> ScoreDistribution: ...


def _normalize_raw(words: Sequence[str], raw: Sequence[float]) -> ScoreDistribution:
    total = float(sum(raw))
    if total <= 0.0:
        uniform = 1.0 / len(words)
        return ScoreDistribution(scores={w: uniform for w in words})
    return ScoreDistribution(scores={w: float(r) / total for w, r in zip(words, raw)})


def _count_sentence(
    tokens: Sequence[str], tables: list[dict[tuple[str, ...], int]]
) -> None:
    pad = MAX_ORDER - 1
    padded = [BOS] * pad + list(tokens) + [EOS] * pad
    # targets: every real token plus the first EOS
    for j in range(pad, pad + len(tokens) + 1):
        for order in range(1, MAX_ORDER + 1):
            gram = tuple(padded[j - order + 1 : j + 1])
            table = tables[order - 1]
            table[gram] = table.get(gram, 0) + 1


class FourGramModel:
    """Interpolated n-gram scorer, orders 1-4, forward and backward.

    Per direction, P(w | context) is the weighted sum over orders of
    add-k estimates; the two directions are averaged, then the result is
    renormalized over the requested word set.  Backward tables are the
    forward tables of the reversed corpus, so one counting routine serves
    both directions.
    """

    def __init__(
        self,
        forward: list[dict[tuple[str, ...], int]],
        backward: list[dict[tuple[str, ...], int]],
        weights: tuple[float, ...] = DEFAULT_WEIGHTS,
        add_k: float = DEFAULT_ADD_K,
    ):
        if len(weights) != MAX_ORDER:
            raise ContractViolation(f"need {MAX_ORDER} weights, got {len(weights)}")
        if any(w < 0 for w in weights) or abs(sum(weights) - 1.0) > 1e-9:
            raise ContractViolation("weights must be non-negative and sum to 1")
        if add_k <= 0:
            raise ContractViolation("add_k must be positive")
        self.forward = forward
        self.backward = backward
        self.weights = tuple(float(w) for w in weights)
        self.add_k = float(add_k)
        self.vocabulary = frozenset(
            g[0] for g in forward[0] if g[0] not in (BOS, EOS)
        )
        self._fwd_totals = [self._context_totals(t) for t in forward]
        self._bwd_totals = [self._context_totals(t) for t in backward]

    @staticmethod
    def _context_totals(
        table: dict[tuple[str, ...], int]
    ) -> dict[tuple[str, ...], int]:
        totals: dict[tuple[str, ...], int] = {}
        for gram, count in table.items():
            ctx = gram[:-1]
            totals[ctx] = totals.get(ctx, 0) + count
        return totals

    @classmethod
    def train(
        cls,
        sentences: Iterable[Sequence[str]],
        weights: tuple[float, ...] = DEFAULT_WEIGHTS,
        add_k: float = DEFAULT_ADD_K,
    ) -> "FourGramModel":
        forward: list[dict[tuple[str, ...], int]] = [{} for _ in range(MAX_ORDER)]
        backward: list[dict[tuple[str, ...], int]] = [{} for _ in range(MAX_ORDER)]
        seen = False
        for tokens in sentences:
            tokens = [t for t in tokens if t]
            if not tokens:
                continue
            seen = True
            _count_sentence(tokens, forward)
            _count_sentence(list(reversed(tokens)), backward)
        if not seen:
            raise ContractViolation("cannot train on an empty corpus")
        return cls(forward, backward, weights=weights, add_k=add_k)

    # -- probability machinery ----------------------------------------------

    def _smoothed(
        self,
        tables: list[dict[tuple[str, ...], int]],
        totals: list[dict[tuple[str, ...], int]],
        context: Sequence[str],
        word: str,
        order: int,
    ) -> float:
        ctx = tuple(context[-(order - 1) :]) if order > 1 else ()
        count = tables[order - 1].get(ctx + (word,), 0)
        total = totals[order - 1].get(ctx, 0)
        # +1 covers EOS as a possible target
        vocab_size = len(self.vocabulary) + 1
        return (count + self.add_k) / (total + self.add_k * vocab_size)

    def _directional(
        self,
        tables: list[dict[tuple[str, ...], int]],
        totals: list[dict[tuple[str, ...], int]],
        context: Sequence[str],
        word: str,
    ) -> float:
        value = 0.0
        for order in range(MAX_ORDER, 0, -1):
            weight = self.weights[MAX_ORDER - order]
            if weight:
                value += weight * self._smoothed(tables, totals, context, word, order)
        return value

    def score(self, query: MaskedQuery) -> ScoreDistribution:
        pad = [BOS] * (MAX_ORDER - 1)
        i = query.mask_index
        left = pad + list(query.tokens[:i])
        # nearest-right-first, matching the reversed-corpus tables
        right = pad + list(reversed(query.tokens[i + 1 :]))
        raw = [
            (
                self._directional(self.forward, self._fwd_totals, left, w)
                + self._directional(self.backward, self._bwd_totals, right, w)
            )
            / 2.0
            for w in query.vocabulary_of_interest
        ]
        return _normalize_raw(query.vocabulary_of_interest, raw)

    # -- serialization --------------------------------------------------------

    def save(self, path: str | Path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(f"{MODEL_FORMAT}\t{MODEL_VERSION}\n")
            fh.write(f"add_k\t{self.add_k!r}\n")
            fh.write("weights\t" + " ".join(repr(w) for w in self.weights) + "\n")
            for direction, tables in (("forward", self.forward), ("backward", self.backward)):
                for order in range(1, MAX_ORDER + 1):
                    fh.write(f"section\t{direction}\t{order}\n")
                    table = tables[order - 1]
                    for gram in sorted(table):
                        fh.write(" ".join(gram) + "\t" + str(table[gram]) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "FourGramModel":
        forward: list[dict[tuple[str, ...], int]] = [{} for _ in range(MAX_ORDER)]
        backward: list[dict[tuple[str, ...], int]] = [{} for _ in range(MAX_ORDER)]
        add_k = DEFAULT_ADD_K
        weights = DEFAULT_WEIGHTS
        current: dict[tuple[str, ...], int] | None = None
        with open(path, "r", encoding="utf-8") as fh:
            header = fh.readline().rstrip("\n").split("\t")
            if header[0] != MODEL_FORMAT or header[1:] != [str(MODEL_VERSION)]:
                raise ScorerProtocolError(
                    f"unsupported model file header: {header!r}"
                )
            for line in fh:
                line = line.rstrip("\n")
                if not line:
                    continue
                key, _, rest = line.partition("\t")
                if key == "add_k":
                    add_k = float(rest)
                elif key == "weights":
                    weights = tuple(float(x) for x in rest.split())
                elif key == "section":
                    direction, order_s = rest.split("\t")
                    tables = forward if direction == "forward" else backward
                    current = tables[int(order_s) - 1]
                else:
                    if current is None:
                        raise ScorerProtocolError("record before any section header")
                    current[tuple(key.split(" "))] = int(rest)
        return cls(forward, backward, weights=weights, add_k=add_k)


def train_fourgram(
    sentences: Iterable[Sequence[str]],
    weights: tuple[float, ...] = DEFAULT_WEIGHTS,
    add_k: float = DEFAULT_ADD_K,
) -> FourGramModel:
    return FourGramModel.train(sentences, weights=weights, add_k=add_k)


class RemoteScorer:
    """HTTP adapter for an external masked-LM scoring service.

    POSTs the wire-protocol request and renormalizes the returned scores.
    Failures surface as typed errors; there is no silent fallback.
    """

    def __init__(self, endpoint: str, timeout: float = 10.0, concurrency: int = 4):
        self.endpoint = endpoint.rstrip("/")
        self.timeout = timeout
        self.session = requests.Session()
        adapter = requests.adapters.HTTPAdapter(
            pool_connections=concurrency, pool_maxsize=concurrency
        )
        self.session.mount("http://", adapter)
        self.session.mount("https://", adapter)

    def score(self, query: MaskedQuery) -> ScoreDistribution:
        payload = {
            "tokens": list(query.tokens),
            "mask_index": query.mask_index,
            "candidates": list(query.vocabulary_of_interest),
        }
        try:
            resp = self.session.post(self.endpoint, json=payload, timeout=self.timeout)
        except requests.RequestException as exc:
            raise ScorerTransportError(f"scoring request failed: {exc}") from exc
        if resp.status_code != 200:
            raise ScorerTransportError(
                f"scoring service returned status {resp.status_code}"
            )
        try:
            body = resp.json()
        except (json.JSONDecodeError, ValueError) as exc:
            raise ScorerProtocolError("scoring response is not valid JSON") from exc
        scores = body.get("scores") if isinstance(body, dict) else None
        if not isinstance(scores, dict):
            raise ScorerProtocolError('scoring response lacks a "scores" object')
        raw = []
        for word in query.vocabulary_of_interest:
            if word not in scores:
                raise ScorerMissingWordError(
                    f"scoring response omitted requested word {word!r}"
                )
            value = scores[word]
            if not isinstance(value, (int, float)) or value < 0:
                raise ScorerProtocolError(
                    f"score for {word!r} is not a non-negative number: {value!r}"
                )
            raw.append(float(value))
        return _normalize_raw(query.vocabulary_of_interest, raw)


@dataclass
class StaticScorer:
    """Fixture scorer replaying a fixed word-score table (tests, replays)."""

    table: dict[str, float]
    floor: float = 0.0

    def score(self, query: MaskedQuery) -> ScoreDistribution:
        raw = [self.table.get(w, self.floor) for w in query.vocabulary_of_interest]
        return _normalize_raw(query.vocabulary_of_interest, raw)
