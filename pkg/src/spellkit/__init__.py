"""Spelling error detection and correction for Persian clinical text."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    SpellkitError,
    ConfigError,
    ContractViolation,
    LexiconFormatError,
    NoCorrectionError,
    EvaluationInputError,
    ScorerError,
    ScorerProtocolError,
    ScorerTransportError,
    ScorerMissingWordError,
)
from .normalize import (
    NormalizationConfig,
    NormalizedText,
    Token,
    Sentence,
    normalize,
    tokenize,
    segment_sentences,
    is_passthrough,
    sentence_from_surfaces,
)
from .lexicon import (
    Lexicon,
    load_lexicon,
    save_lexicon,
    from_words,
    merge,
    build_from_corpus,
)
from .editops import (
    EditType,
    Candidate,
    CandidateIndex,
    osa_distance,
    osa_distance_bounded,
    classify_edit,
    generate_candidates,
    full_scan_candidates,
)
from .perto import PertoTable, perto_code, perto_match
from .scorer import (
    MaskedQuery,
    ScoreDistribution,
    Scorer,
    FourGramModel,
    RemoteScorer,
    StaticScorer,
    train_fourgram,
    DEFAULT_WEIGHTS,
    DEFAULT_ADD_K,
)
from .detect import (
    ErrorClass,
    DetectorConfig,
    Detection,
    RealWordEvidence,
    detect_nonword,
    detect_realword,
)
from .correct import (
    Correction,
    rank_and_select,
    correct_nonword,
    correct_realword,
)
from .inject import (
    InjectionSpec,
    GoldRecord,
    inject_errors,
    largest_remainder,
    save_gold,
    load_gold,
    save_corpus,
    load_corpus,
)
from .metrics import (
    Task,
    Metrics,
    Prediction,
    ReportRow,
    evaluate,
    f1_from_precision_recall,
    render_text,
    render_json,
    render_csv,
    save_predictions,
    load_predictions,
)
from .engine import Engine, EngineConfig, predict_sentences

__all__ = [
    "__version__",
    "SpellkitError",
    "ConfigError",
    "ContractViolation",
    "LexiconFormatError",
    "NoCorrectionError",
    "EvaluationInputError",
    "ScorerError",
    "ScorerProtocolError",
    "ScorerTransportError",
    "ScorerMissingWordError",
    "NormalizationConfig",
    "NormalizedText",
    "Token",
    "Sentence",
    "normalize",
    "tokenize",
    "segment_sentences",
    "is_passthrough",
    "sentence_from_surfaces",
    "Lexicon",
    "load_lexicon",
    "save_lexicon",
    "from_words",
    "merge",
    "build_from_corpus",
    "EditType",
    "Candidate",
    "CandidateIndex",
    "osa_distance",
    "osa_distance_bounded",
    "classify_edit",
    "generate_candidates",
    "full_scan_candidates",
    "PertoTable",
    "perto_code",
    "perto_match",
    "MaskedQuery",
    "ScoreDistribution",
    "Scorer",
    "FourGramModel",
    "RemoteScorer",
    "StaticScorer",
    "train_fourgram",
    "DEFAULT_WEIGHTS",
    "DEFAULT_ADD_K",
    "ErrorClass",
    "DetectorConfig",
    "Detection",
    "RealWordEvidence",
    "detect_nonword",
    "detect_realword",
    "Correction",
    "rank_and_select",
    "correct_nonword",
    "correct_realword",
    "InjectionSpec",
    "GoldRecord",
    "inject_errors",
    "largest_remainder",
    "save_gold",
    "load_gold",
    "save_corpus",
    "load_corpus",
    "Task",
    "Metrics",
    "Prediction",
    "ReportRow",
    "evaluate",
    "f1_from_precision_recall",
    "render_text",
    "render_json",
    "render_csv",
    "save_predictions",
    "load_predictions",
    "Engine",
    "EngineConfig",
    "predict_sentences",
]
