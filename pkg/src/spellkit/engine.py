"""End-to-end checking pipeline behind the service and the CLI.

The engine owns immutable collaborators (lexicon, candidate index, scorer,
normalization rules, orthographic code table) loaded once at startup.
Each request runs normalize, segment, then per sentence: non-word
detection and correction, otherwise real-word detection and correction.
Scorer failures are reported per sentence without aborting the batch.
"""

from __future__ import annotations

import json
import urllib.parse
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

from ._kernels import backend_name
from .correct import Correction, correct_nonword, correct_realword
from .detect import (
    DetectorConfig,
    ErrorClass,
    detect_nonword,
    detect_realword,
)
from .editops import Candidate, CandidateIndex
from .errors import (
    ConfigError,
    ContractViolation,
    NoCorrectionError,
    ScorerError,
)
from .lexicon import Lexicon, load_lexicon, merge
from .metrics import Prediction
from .normalize import (
    NormalizationConfig,
    Sentence,
    normalize,
    segment_sentences,
    sentence_from_surfaces,
)
from .perto import PertoTable
from .scorer import FourGramModel, MaskedQuery, RemoteScorer, Scorer

DEFAULT_REQUEST_BYTES = 1_000_000


@dataclass(frozen=True)
class EngineConfig:
    lexicon_paths: tuple[str, ...] = ()
    fourgram_model: str | None = None
    remote_endpoint: str | None = None
    normalization: str | None = None
    perto_table: str | None = None
    max_dist: int = 2
    margin: float = 1.0
    top_k: int = 10
    perto_enabled: bool = True
    request_bytes_limit: int = DEFAULT_REQUEST_BYTES
    scorer_timeout: float = 10.0
    scorer_concurrency: int = 4

    def __post_init__(self):
        backends = [b for b in (self.fourgram_model, self.remote_endpoint) if b]
        if len(backends) != 1:
            raise ConfigError(
                "exactly one scorer backend required: "
                "set fourgram_model or remote_endpoint"
            )
        if not self.lexicon_paths:
            raise ConfigError("at least one lexicon path required")

    @classmethod
    def from_dict(cls, raw: dict) -> "EngineConfig":
        known = {
            "lexicon_paths",
            "fourgram_model",
            "remote_endpoint",
            "normalization",
            "perto_table",
            "max_dist",
            "margin",
            "top_k",
            "perto_enabled",
            "request_bytes_limit",
            "scorer_timeout",
            "scorer_concurrency",
        }
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(raw)
        if "lexicon_paths" in kwargs:
            kwargs["lexicon_paths"] = tuple(kwargs["lexicon_paths"])
        try:
            return cls(**kwargs)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc

    @classmethod
    def load(cls, path: str | Path) -> "EngineConfig":
        base = Path(path).parent
        try:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
        cfg = cls.from_dict(raw)
        # paths in the file are relative to the file
        def resolve(p: str | None) -> str | None:
            return str(base / p) if p and not Path(p).is_absolute() else p

        return replace(
            cfg,
            lexicon_paths=tuple(resolve(p) for p in cfg.lexicon_paths),
            fourgram_model=resolve(cfg.fourgram_model),
            normalization=resolve(cfg.normalization),
            perto_table=resolve(cfg.perto_table),
        )


def _redact_url(url: str) -> str:
    parts = urllib.parse.urlsplit(url)
    host = parts.hostname or ""
    if parts.port:
        host += f":{parts.port}"
    return urllib.parse.urlunsplit((parts.scheme, host, parts.path, "", ""))


class Engine:
    def __init__(
        self,
        lexicon: Lexicon,
        scorer: Scorer,
        scorer_backend: str,
        cfg: EngineConfig,
        rules: NormalizationConfig | None = None,
        table: PertoTable | None = None,
    ):
        self.lexicon = lexicon
        self.index = CandidateIndex(lexicon, max_dist=2)
        self.scorer = scorer
        self.scorer_backend = scorer_backend
        self.cfg = cfg
        self.rules = rules or NormalizationConfig.default()
        self.table = table or PertoTable.default()

    @classmethod
    def from_config(cls, cfg: EngineConfig) -> "Engine":
        lexicons = []
        for path in cfg.lexicon_paths:
            source = Path(path).stem
            lexicons.append(load_lexicon(path, source=source))
        lexicon = lexicons[0]
        for extra in lexicons[1:]:
            lexicon = merge(lexicon, extra)
        if cfg.fourgram_model:
            scorer: Scorer = FourGramModel.load(cfg.fourgram_model)
            backend = "fourgram"
        else:
            scorer = RemoteScorer(
                cfg.remote_endpoint,
                timeout=cfg.scorer_timeout,
                concurrency=cfg.scorer_concurrency,
            )
            backend = "remote"
        rules = (
            NormalizationConfig.load(cfg.normalization)
            if cfg.normalization
            else None
        )
        table = PertoTable.load(cfg.perto_table) if cfg.perto_table else None
        return cls(lexicon, scorer, backend, cfg, rules=rules, table=table)

    # -- request plumbing ----------------------------------------------------

    def detector_config(self, options: dict | None = None) -> DetectorConfig:
        options = options or {}
        return DetectorConfig(
            max_dist=int(options.get("max_dist", self.cfg.max_dist)),
            margin=float(options.get("margin", self.cfg.margin)),
            top_k=int(options.get("top_k", self.cfg.top_k)),
        )

    def _perto_enabled(self, options: dict | None) -> bool:
        if options and "perto" in options:
            return bool(options["perto"])
        return self.cfg.perto_enabled

    def check(self, text: str, options: dict | None = None) -> dict:
        dcfg = self.detector_config(options)
        perto_on = self._perto_enabled(options)
        norm = normalize(text, self.rules)
        sentences = segment_sentences(norm)
        out_sentences = []
        edits: list[tuple[tuple[int, int], str]] = []
        for sent in sentences:
            entry = self._check_sentence(sent, norm.content, dcfg, perto_on, edits)
            out_sentences.append(entry)
        return {
            "text": norm.content,
            "corrected_text": _splice(norm.content, edits),
            "sentences": out_sentences,
        }

    def _check_sentence(
        self,
        sent: Sentence,
        content: str,
        dcfg: DetectorConfig,
        perto_on: bool,
        edits: list,
    ) -> dict:
        span = sent.source_span
        entry: dict = {
            "text": content[span[0] : span[1]],
            "detections": [],
            "corrections": [],
        }
        local_edits: list[tuple[tuple[int, int], str]] = []
        try:
            detection = detect_nonword(sent, self.lexicon)
            correction: Correction | None = None
            if detection is not None:
                try:
                    correction = correct_nonword(
                        sent, detection, self.index, self.scorer, dcfg,
                        self.table, perto_enabled=perto_on,
                    )
                except NoCorrectionError:
                    correction = None
            else:
                detection = detect_realword(sent, self.index, self.scorer, dcfg)
                if detection is not None:
                    correction = correct_realword(
                        sent, detection, self.index, self.scorer, dcfg,
                        self.table, perto_enabled=perto_on,
                    )
        except ScorerError as exc:
            entry["error"] = str(exc)
            entry["corrected_text"] = entry["text"]
            return entry

        if detection is not None:
            entry["detections"].append(
                {
                    "token_index": detection.token_index,
                    "error_class": detection.error_class.value,
                }
            )
        if correction is not None:
            entry["corrections"].append(_correction_json(correction))
            token = sent.tokens[correction.token_index]
            local_edits.append((token.char_span, correction.replacement))
        edits.extend(local_edits)
        entry["corrected_text"] = _splice(
            content[span[0] : span[1]],
            [((s - span[0], e - span[0]), r) for (s, e), r in local_edits],
        )
        return entry

    def apply(self, text: str, corrections: Sequence[dict]) -> dict:
        norm = normalize(text, self.rules)
        sentences = segment_sentences(norm)
        edits = []
        for item in corrections:
            try:
                si = int(item["sentence_index"])
                ti = int(item["token_index"])
                replacement = str(item["replacement"])
            except (KeyError, TypeError, ValueError) as exc:
                raise ContractViolation(f"malformed correction entry: {item!r}") from exc
            if not (0 <= si < len(sentences)):
                raise ContractViolation(f"sentence_index {si} out of range")
            tokens = sentences[si].tokens
            if not (0 <= ti < len(tokens)):
                raise ContractViolation(f"token_index {ti} out of range")
            edits.append((tokens[ti].char_span, replacement))
        return {"text": _splice(norm.content, edits)}

    def health(self) -> dict:
        status = "ok"
        if self.scorer_backend == "remote":
            try:
                self.scorer.score(
                    MaskedQuery(tokens=("سلام",), mask_index=0, vocabulary_of_interest=("سلام",))
                )
            except ScorerError:
                status = "degraded"
        return {
            "status": status,
            "lexicon_entries": len(self.lexicon),
            "scorer_backend": self.scorer_backend,
            "distance_backend": backend_name(),
        }

    def config_dict(self) -> dict:
        cfg = self.cfg
        return {
            "lexicon_paths": list(cfg.lexicon_paths),
            "fourgram_model": cfg.fourgram_model,
            "remote_endpoint": _redact_url(cfg.remote_endpoint)
            if cfg.remote_endpoint
            else None,
            "normalization": cfg.normalization,
            "perto_table": cfg.perto_table,
            "max_dist": cfg.max_dist,
            "margin": cfg.margin,
            "top_k": cfg.top_k,
            "perto_enabled": cfg.perto_enabled,
            "request_bytes_limit": cfg.request_bytes_limit,
            "scorer_timeout": cfg.scorer_timeout,
            "scorer_concurrency": cfg.scorer_concurrency,
        }


def _correction_json(correction: Correction) -> dict:
    chosen = correction.replacement
    ordered: list[Candidate] = [
        c for c in correction.ranked_candidates if c.word == chosen
    ] + [c for c in correction.ranked_candidates if c.word != chosen]
    return {
        "token_index": correction.token_index,
        "original": correction.original,
        "suggested": chosen,
        "used_perto": correction.used_perto,
        "candidates": [
            {
                "word": c.word,
                "score": c.contextual_score,
                "perto_match": c.perto_match,
                "distance": c.distance,
            }
            for c in ordered
        ],
    }


def _splice(text: str, edits: Sequence[tuple[tuple[int, int], str]]) -> str:
    """Replace [start, end) spans; spans must not overlap."""
    pieces = []
    pos = 0
    for (start, end), replacement in sorted(edits, key=lambda e: e[0][0]):
        if start < pos:
            raise ContractViolation("overlapping correction spans")
        pieces.append(text[pos:start])
        pieces.append(replacement)
        pos = end
    pieces.append(text[pos:])
    return "".join(pieces)


def run_pipeline(text: str, cfg: EngineConfig, options: dict | None = None) -> dict:
    """One-shot convenience: build an engine from config and check."""
    return Engine.from_config(cfg).check(text, options)


def predict_sentences(
    sentences: Sequence[Sequence[str]],
    index: CandidateIndex,
    scorer: Scorer,
    dcfg: DetectorConfig,
    table: PertoTable | None = None,
    perto_enabled: bool = True,
) -> list[Prediction]:
    """Run detection and correction over a pre-tokenized corpus, one
    prediction per flagged sentence (replacement None when correction
    failed); sentence ids are corpus positions."""
    lexicon = index.lexicon
    predictions: list[Prediction] = []
    for sid, surfaces in enumerate(sentences):
        sent = sentence_from_surfaces(surfaces)
        detection = detect_nonword(sent, lexicon)
        if detection is None:
            detection = detect_realword(sent, index, scorer, dcfg)
        if detection is None:
            continue
        replacement = None
        try:
            if detection.error_class == ErrorClass.NON_WORD:
                correction = correct_nonword(
                    sent, detection, index, scorer, dcfg, table,
                    perto_enabled=perto_enabled,
                )
            else:
                correction = correct_realword(
                    sent, detection, index, scorer, dcfg, table,
                    perto_enabled=perto_enabled,
                )
            replacement = correction.replacement
        except NoCorrectionError:
            replacement = None
        predictions.append(
            Prediction(
                sentence_id=sid,
                token_index=detection.token_index,
                error_class=detection.error_class,
                replacement=replacement,
            )
        )
    return predictions
