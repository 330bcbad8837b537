"""Precision/recall/F1 evaluation against injected gold records.

Detection credit requires the right token position; correction credit
additionally requires recovering the exact original word.  A prediction
for a sentence with no gold error of the task's class counts as a false
positive, and an unmatched gold error as a false negative.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .detect import ErrorClass
from .errors import EvaluationInputError
from .inject import GoldRecord


def f1_from_precision_recall(precision: float, recall: float) -> float:
    if precision + recall == 0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class Metrics:
    true_positives: int
    false_positives: int
    false_negatives: int
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, tp: int, fp: int, fn: int) -> "Metrics":
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        return cls(
            true_positives=tp,
            false_positives=fp,
            false_negatives=fn,
            precision=precision,
            recall=recall,
            f1=f1_from_precision_recall(precision, recall),
        )


class Task(str, Enum):
    NON_WORD_DETECTION = "NonWordDetection"
    NON_WORD_CORRECTION = "NonWordCorrection"
    REAL_WORD_DETECTION = "RealWordDetection"
    REAL_WORD_CORRECTION = "RealWordCorrection"

    @property
    def error_class(self) -> ErrorClass:
        if self in (Task.NON_WORD_DETECTION, Task.NON_WORD_CORRECTION):
            return ErrorClass.NON_WORD
        return ErrorClass.REAL_WORD

    @property
    def needs_replacement(self) -> bool:
        return self in (Task.NON_WORD_CORRECTION, Task.REAL_WORD_CORRECTION)


@dataclass(frozen=True)
class Prediction:
    """One system-reported error for a sentence."""

    sentence_id: int
    token_index: int
    error_class: ErrorClass
    replacement: str | None = None

    def to_json(self) -> str:
        return json.dumps(
            {
                "sentence_id": self.sentence_id,
                "token_index": self.token_index,
                "error_class": self.error_class.value,
                "replacement": self.replacement,
            },
            ensure_ascii=False,
        )

    @classmethod
    def from_json(cls, line: str) -> "Prediction":
        data = json.loads(line)
        return cls(
            sentence_id=int(data["sentence_id"]),
            token_index=int(data["token_index"]),
            error_class=ErrorClass(data["error_class"]),
            replacement=data.get("replacement"),
        )


def _index_unique(records, kind: str) -> dict[int, object]:
    table: dict[int, object] = {}
    for rec in records:
        if rec.sentence_id in table:
            raise EvaluationInputError(
                f"duplicate sentence_id {rec.sentence_id} in {kind}"
            )
        table[rec.sentence_id] = rec
    return table


def evaluate(
    predictions: Sequence[Prediction],
    gold: Sequence[GoldRecord],
    task: Task,
) -> Metrics:
    wanted = task.error_class
    preds = _index_unique(
        [p for p in predictions if p.error_class == wanted], "predictions"
    )
    golds = _index_unique([g for g in gold if g.error_class == wanted], "gold")

    tp = fp = 0
    for sid, pred in preds.items():
        rec = golds.get(sid)
        hit = rec is not None and pred.token_index == rec.token_index
        if hit and task.needs_replacement:
            hit = pred.replacement == rec.original
        if hit:
            tp += 1
        else:
            fp += 1
    fn = sum(
        1
        for sid, rec in golds.items()
        if sid not in preds
        or preds[sid].token_index != rec.token_index
        or (task.needs_replacement and preds[sid].replacement != rec.original)
    )
    return Metrics.from_counts(tp, fp, fn)


# -- reporting ----------------------------------------------------------------

PERTO_SUFFIX = "+perto"


@dataclass(frozen=True)
class ReportRow:
    name: str
    metrics: Metrics


def _pct(value: float) -> str:
    return f"{100.0 * value:.1f}"


def _delta(rows: Sequence[ReportRow], row: ReportRow) -> float | None:
    """F1 gain of a "<base>+perto" row over its "<base>" counterpart."""
    if not row.name.endswith(PERTO_SUFFIX):
        return None
    base = row.name[: -len(PERTO_SUFFIX)]
    for other in rows:
        if other.name == base:
            return row.metrics.f1 - other.metrics.f1
    return None


def render_text(rows: Sequence[ReportRow]) -> str:
    header = ["Configuration", "Precision", "Recall", "F1", "dF1"]
    body = []
    for row in rows:
        delta = _delta(rows, row)
        body.append(
            [
                row.name,
                _pct(row.metrics.precision),
                _pct(row.metrics.recall),
                _pct(row.metrics.f1),
                _pct(delta) if delta is not None else "",
            ]
        )
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    lines = []
    for record in [header] + body:
        lines.append(
            "  ".join(cell.ljust(w) for cell, w in zip(record, widths)).rstrip()
        )
    return "\n".join(lines) + "\n"


def render_json(rows: Sequence[ReportRow]) -> str:
    payload = []
    for row in rows:
        delta = _delta(rows, row)
        entry = {
            "configuration": row.name,
            "precision": _pct(row.metrics.precision),
            "recall": _pct(row.metrics.recall),
            "f1": _pct(row.metrics.f1),
        }
        if delta is not None:
            entry["delta_f1"] = _pct(delta)
        payload.append(entry)
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


def render_csv(rows: Sequence[ReportRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["configuration", "precision", "recall", "f1", "delta_f1"])
    for row in rows:
        delta = _delta(rows, row)
        writer.writerow(
            [
                row.name,
                _pct(row.metrics.precision),
                _pct(row.metrics.recall),
                _pct(row.metrics.f1),
                _pct(delta) if delta is not None else "",
            ]
        )
    return buf.getvalue()


def save_predictions(predictions: Sequence[Prediction], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for pred in predictions:
            fh.write(pred.to_json() + "\n")


def load_predictions(path) -> list[Prediction]:
    records = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(Prediction.from_json(line))
    return records
