"""Candidate ranking and replacement selection.

Selection is contextual-score argmax over the retained top-k, except that
substitution-type candidates sharing the error's orthographic code form a
gate: when that gate is non-empty, the best gated candidate wins even if
a non-matching candidate scores higher.  Insertion, deletion, transposition
and mixed edits never enter the gate, so for them the gate being empty
reduces selection to the plain contextual argmax.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .detect import Detection, DetectorConfig, ErrorClass
from .editops import Candidate, CandidateIndex, EditType, generate_candidates
from .errors import ContractViolation, NoCorrectionError
from .lexicon import Lexicon
from .normalize import Sentence
from .perto import PertoTable, perto_match
from .scorer import MaskedQuery, ScoreDistribution, Scorer


@dataclass(frozen=True)
class Correction:
    token_index: int
    original: str
    replacement: str
    ranked_candidates: tuple[Candidate, ...]
    used_perto: bool
    corrected_tokens: tuple[str, ...] | None = None


def rank_and_select(
    error_word: str,
    scored: ScoreDistribution,
    candidates: list[Candidate],
    cfg: DetectorConfig,
    table: PertoTable | None = None,
    token_index: int = -1,
    original_score: float | None = None,
    perto_enabled: bool = True,
) -> Correction:
    """Top-k retention, orthographic-code gate, contextual fallback.

    ``original_score`` set (real-word case) additionally requires gated
    candidates to outscore the original word.  Ties break by score, then
    smaller edit distance, then lexicographic order.
    """
    if not candidates:
        raise NoCorrectionError(f"no candidates for {error_word!r}")
    table = table or PertoTable.default()
    enriched = []
    for cand in candidates:
        if cand.word not in scored.scores:
            raise ContractViolation(f"candidate {cand.word!r} was not scored")
        enriched.append(
            replace(
                cand,
                contextual_score=scored[cand.word],
                perto_match=perto_match(cand.word, error_word, table),
            )
        )
    enriched.sort(key=lambda c: (-c.contextual_score, c.distance, c.word))
    top = enriched[: cfg.top_k]

    gated = []
    if perto_enabled:
        for cand in top:
            if cand.edit_type != EditType.SUBSTITUTION or not cand.perto_match:
                continue
            if original_score is not None and not cand.contextual_score > original_score:
                continue
            gated.append(cand)

    if gated:
        chosen, used_perto = gated[0], True
    else:
        chosen, used_perto = top[0], False

    return Correction(
        token_index=token_index,
        original=error_word,
        replacement=chosen.word,
        ranked_candidates=tuple(top),
        used_perto=used_perto,
    )


def _rewrite(surfaces: tuple[str, ...], index: int, replacement: str) -> tuple[str, ...]:
    out = list(surfaces)
    out[index] = replacement
    return tuple(out)


def correct_nonword(
    sentence: Sentence,
    detection: Detection,
    lex: Lexicon | CandidateIndex,
    scorer: Scorer,
    cfg: DetectorConfig,
    table: PertoTable | None = None,
    perto_enabled: bool = True,
) -> Correction:
    """Generate lexicon candidates for the flagged token, score them in
    context and select; the out-of-lexicon error's own score is ignored."""
    if detection.error_class != ErrorClass.NON_WORD:
        raise ContractViolation("correct_nonword requires a NonWord detection")
    surfaces = tuple(sentence.surfaces)
    word = surfaces[detection.token_index]
    candidates = generate_candidates(word, lex, cfg.max_dist)
    if not candidates:
        raise NoCorrectionError(f"no lexicon word within distance of {word!r}")
    vocab = tuple(c.word for c in candidates)
    if word not in vocab:
        vocab = vocab + (word,)
    query = MaskedQuery(
        tokens=surfaces,
        mask_index=detection.token_index,
        vocabulary_of_interest=vocab,
    )
    scored = scorer.score(query)
    correction = rank_and_select(
        word,
        scored,
        candidates,
        cfg,
        table,
        token_index=detection.token_index,
        perto_enabled=perto_enabled,
    )
    return replace(
        correction,
        corrected_tokens=_rewrite(surfaces, detection.token_index, correction.replacement),
    )


def correct_realword(
    sentence: Sentence,
    detection: Detection,
    lex: Lexicon | CandidateIndex,
    scorer: Scorer,
    cfg: DetectorConfig,
    table: PertoTable | None = None,
    perto_enabled: bool = True,
) -> Correction:
    """Select among the candidates scored at detection time; gated
    candidates must additionally outscore the original word."""
    if detection.error_class != ErrorClass.REAL_WORD or detection.evidence is None:
        raise ContractViolation("correct_realword requires RealWord evidence")
    surfaces = tuple(sentence.surfaces)
    word = surfaces[detection.token_index]
    evidence = detection.evidence
    correction = rank_and_select(
        word,
        evidence.distribution,
        list(evidence.candidates),
        cfg,
        table,
        token_index=detection.token_index,
        original_score=evidence.original_score,
        perto_enabled=perto_enabled,
    )
    return replace(
        correction,
        corrected_tokens=_rewrite(surfaces, detection.token_index, correction.replacement),
    )
