"""First-error detection within a sentence.

Non-word detection is lexicon lookup; real-word detection masks each token
in turn and asks the contextual scorer whether some lexicon neighbor fits
the slot strictly better than the written word.  Both scan left to right
and stop at the first hit: downstream stages assume at most one error per
sentence, so a second error is only found on a later pass.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .editops import Candidate, CandidateIndex, generate_candidates
from .errors import ContractViolation
from .lexicon import Lexicon, contains
from .normalize import Sentence, is_passthrough
from .scorer import MaskedQuery, ScoreDistribution, Scorer


class ErrorClass(str, Enum):
    NON_WORD = "NonWord"
    REAL_WORD = "RealWord"


@dataclass(frozen=True)
class DetectorConfig:
    max_dist: int = 2
    margin: float = 1.0
    top_k: int = 10

    def __post_init__(self):
        if self.max_dist not in (1, 2):
            raise ContractViolation(f"max_dist must be 1 or 2, got {self.max_dist}")
        if self.margin < 1.0:
            raise ContractViolation(f"margin must be >= 1.0, got {self.margin}")
        if self.top_k < 1:
            raise ContractViolation(f"top_k must be >= 1, got {self.top_k}")


@dataclass(frozen=True)
class RealWordEvidence:
    """Scores computed at detection time, reused by the corrector."""

    candidate: str
    score: float
    original_score: float
    distribution: ScoreDistribution
    candidates: tuple[Candidate, ...]


@dataclass(frozen=True)
class Detection:
    token_index: int
    error_class: ErrorClass
    evidence: RealWordEvidence | None = None


def detect_nonword(sentence: Sentence, lex: Lexicon) -> Detection | None:
    """First token missing from the lexicon, skipping pass-through tokens
    (digits, Latin, punctuation); None when every token is known."""
    for token in sentence.tokens:
        if is_passthrough(token.surface):
            continue
        if not contains(lex, token.surface):
            return Detection(token_index=token.index, error_class=ErrorClass.NON_WORD)
    return None


def detect_realword(
    sentence: Sentence,
    lex: Lexicon | CandidateIndex,
    scorer: Scorer,
    cfg: DetectorConfig,
) -> Detection | None:
    """Mask each token in order; detect when some candidate scores strictly
    above the original times the margin, carrying the scores as evidence.

    Assumes non-word detection already passed: out-of-lexicon tokens are
    skipped here rather than treated as real-word errors.
    """
    lexicon = lex.lexicon if isinstance(lex, CandidateIndex) else lex
    surfaces = tuple(sentence.surfaces)
    for token in sentence.tokens:
        word = token.surface
        if is_passthrough(word) or not contains(lexicon, word):
            continue
        candidates = generate_candidates(word, lex, cfg.max_dist)
        if not candidates:
            continue
        vocab = tuple(c.word for c in candidates) + (word,)
        query = MaskedQuery(
            tokens=surfaces, mask_index=token.index, vocabulary_of_interest=vocab
        )
        dist = scorer.score(query)
        original_score = dist[word]
        best_word, best_score = min(
            ((c.word, dist[c.word]) for c in candidates),
            key=lambda t: (-t[1], t[0]),
        )
        if best_score > original_score * cfg.margin:
            evidence = RealWordEvidence(
                candidate=best_word,
                score=best_score,
                original_score=original_score,
                distribution=dist,
                candidates=tuple(candidates),
            )
            return Detection(
                token_index=token.index,
                error_class=ErrorClass.REAL_WORD,
                evidence=evidence,
            )
    return None
