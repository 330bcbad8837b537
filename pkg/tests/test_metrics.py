"""Evaluation metrics: counting rules, F1 arithmetic, report rendering."""

import csv
import io
import json

import pytest

from spellkit.detect import ErrorClass
from spellkit.editops import EditType
from spellkit.errors import EvaluationInputError
from spellkit.inject import GoldRecord
from spellkit.metrics import (
    Metrics,
    Prediction,
    ReportRow,
    Task,
    evaluate,
    f1_from_precision_recall,
    load_predictions,
    render_csv,
    render_json,
    render_text,
    save_predictions,
)


def gold_record(sid, ti, original, corrupted, klass, etype=EditType.SUBSTITUTION, dist=1):
    return GoldRecord(
        sentence_id=sid,
        token_index=ti,
        original=original,
        corrupted=corrupted,
        error_class=klass,
        edit_type=etype,
        distance=dist,
    )


GOLD = [
    gold_record(0, 2, "اب", "اپ", ErrorClass.NON_WORD),
    gold_record(1, 0, "جد", "جدد", ErrorClass.NON_WORD, EditType.INSERTION),
    gold_record(2, 1, "هوز", "هوژ", ErrorClass.REAL_WORD),
]


class TestF1:
    def test_from_counts(self):
        m = Metrics.from_counts(3, 1, 2)
        assert m.true_positives == 3
        assert m.false_positives == 1
        assert m.false_negatives == 2
        assert m.precision == pytest.approx(0.75)
        assert m.recall == pytest.approx(0.6)
        assert m.f1 == pytest.approx(2 * 0.75 * 0.6 / (0.75 + 0.6))

    def test_zero_denominators(self):
        assert Metrics.from_counts(0, 0, 0) == Metrics(0, 0, 0, 0.0, 0.0, 0.0)
        assert Metrics.from_counts(0, 4, 0).precision == 0.0
        assert Metrics.from_counts(0, 0, 4).recall == 0.0
        assert Metrics.from_counts(0, 4, 4).f1 == 0.0

    def test_harmonic_mean_identity(self):
        for p in (0.1, 0.25, 0.5, 0.9, 1.0):
            for r in (0.1, 0.4, 0.8, 1.0):
                f1 = f1_from_precision_recall(p, r)
                assert f1 == pytest.approx(2 * p * r / (p + r))
                assert min(p, r) - 1e-12 <= f1 <= max(p, r) + 1e-12

    def test_percentage_anchors(self):
        # harmonic mean of typical detection-quality operating points,
        # rounded to one decimal as the reports print them
        assert round(100 * f1_from_precision_recall(0.893, 0.907), 1) == 90.0
        assert round(100 * f1_from_precision_recall(0.908, 0.922), 1) == 91.5


class TestTask:
    def test_wire_values(self):
        assert Task.NON_WORD_DETECTION.value == "NonWordDetection"
        assert Task.NON_WORD_CORRECTION.value == "NonWordCorrection"
        assert Task.REAL_WORD_DETECTION.value == "RealWordDetection"
        assert Task.REAL_WORD_CORRECTION.value == "RealWordCorrection"

    def test_error_class(self):
        assert Task.NON_WORD_DETECTION.error_class == ErrorClass.NON_WORD
        assert Task.NON_WORD_CORRECTION.error_class == ErrorClass.NON_WORD
        assert Task.REAL_WORD_DETECTION.error_class == ErrorClass.REAL_WORD
        assert Task.REAL_WORD_CORRECTION.error_class == ErrorClass.REAL_WORD

    def test_needs_replacement(self):
        assert not Task.NON_WORD_DETECTION.needs_replacement
        assert Task.NON_WORD_CORRECTION.needs_replacement
        assert not Task.REAL_WORD_DETECTION.needs_replacement
        assert Task.REAL_WORD_CORRECTION.needs_replacement


class TestEvaluate:
    PREDS = [
        Prediction(0, 2, ErrorClass.NON_WORD, "زز"),  # right token, wrong fix
        Prediction(1, 1, ErrorClass.NON_WORD, "جد"),  # wrong token
        Prediction(5, 0, ErrorClass.NON_WORD, "اب"),  # clean sentence
        Prediction(2, 1, ErrorClass.REAL_WORD, "هوز"),  # fully correct
    ]

    def test_detection_ignores_replacement(self):
        m = evaluate(self.PREDS, GOLD, Task.NON_WORD_DETECTION)
        assert (m.true_positives, m.false_positives, m.false_negatives) == (1, 2, 1)

    def test_correction_requires_original_word(self):
        m = evaluate(self.PREDS, GOLD, Task.NON_WORD_CORRECTION)
        assert (m.true_positives, m.false_positives, m.false_negatives) == (0, 3, 2)

    def test_other_class_filtered_out(self):
        m = evaluate(self.PREDS, GOLD, Task.REAL_WORD_DETECTION)
        assert (m.true_positives, m.false_positives, m.false_negatives) == (1, 0, 0)
        m = evaluate(self.PREDS, GOLD, Task.REAL_WORD_CORRECTION)
        assert m.f1 == 1.0

    def test_exact_fix_scores_both_tasks(self):
        preds = [Prediction(0, 2, ErrorClass.NON_WORD, "اب")]
        assert evaluate(preds, GOLD, Task.NON_WORD_DETECTION).true_positives == 1
        m = evaluate(preds, GOLD, Task.NON_WORD_CORRECTION)
        assert (m.true_positives, m.false_positives, m.false_negatives) == (1, 0, 1)

    def test_empty_predictions(self):
        m = evaluate([], GOLD, Task.NON_WORD_DETECTION)
        assert (m.true_positives, m.false_positives, m.false_negatives) == (0, 0, 2)

    def test_duplicate_prediction_rejected(self):
        preds = [
            Prediction(0, 2, ErrorClass.NON_WORD),
            Prediction(0, 1, ErrorClass.NON_WORD),
        ]
        with pytest.raises(EvaluationInputError):
            evaluate(preds, GOLD, Task.NON_WORD_DETECTION)

    def test_duplicate_gold_rejected(self):
        gold = [
            gold_record(3, 0, "اب", "اپ", ErrorClass.NON_WORD),
            gold_record(3, 1, "جد", "دج", ErrorClass.NON_WORD),
        ]
        with pytest.raises(EvaluationInputError):
            evaluate([], gold, Task.NON_WORD_DETECTION)

    def test_same_sentence_different_classes_allowed(self):
        preds = [
            Prediction(2, 1, ErrorClass.REAL_WORD, "هوز"),
            Prediction(2, 0, ErrorClass.NON_WORD, "اب"),
        ]
        m = evaluate(preds, GOLD, Task.REAL_WORD_DETECTION)
        assert m.true_positives == 1


ROWS = [
    ReportRow("contextual", Metrics.from_counts(1, 1, 1)),
    ReportRow("contextual+perto", Metrics.from_counts(3, 1, 1)),
]


class TestRendering:
    def test_text_table(self):
        text = render_text(ROWS)
        lines = text.splitlines()
        assert lines[0].split() == ["Configuration", "Precision", "Recall", "F1", "dF1"]
        assert lines[1].split() == ["contextual", "50.0", "50.0", "50.0"]
        assert lines[2].split() == ["contextual+perto", "75.0", "75.0", "75.0", "25.0"]
        assert text.endswith("\n")

    def test_json_report(self):
        payload = json.loads(render_json(ROWS))
        assert payload[0] == {
            "configuration": "contextual",
            "precision": "50.0",
            "recall": "50.0",
            "f1": "50.0",
        }
        assert payload[1]["delta_f1"] == "25.0"

    def test_csv_report(self):
        rows = list(csv.reader(io.StringIO(render_csv(ROWS))))
        assert rows[0] == ["configuration", "precision", "recall", "f1", "delta_f1"]
        assert rows[1] == ["contextual", "50.0", "50.0", "50.0", ""]
        assert rows[2] == ["contextual+perto", "75.0", "75.0", "75.0", "25.0"]

    def test_delta_needs_counterpart(self):
        rows = [ReportRow("alone+perto", Metrics.from_counts(1, 0, 0))]
        payload = json.loads(render_json(rows))
        assert "delta_f1" not in payload[0]


class TestPredictionPersistence:
    def test_roundtrip(self, tmp_path):
        preds = [
            Prediction(0, 2, ErrorClass.NON_WORD, "مایع"),
            Prediction(3, 1, ErrorClass.REAL_WORD, None),
        ]
        path = tmp_path / "preds.jsonl"
        save_predictions(preds, path)
        assert "مایع" in path.read_text(encoding="utf-8")
        assert load_predictions(path) == preds

    def test_loader_skips_blank_lines(self, tmp_path):
        pred = Prediction(1, 0, ErrorClass.NON_WORD, "اب")
        path = tmp_path / "preds.jsonl"
        path.write_text("\n" + pred.to_json() + "\n\n", encoding="utf-8")
        assert load_predictions(path) == [pred]
