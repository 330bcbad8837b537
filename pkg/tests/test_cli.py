"""Command-line interface: subcommands, JSONL pipelines, exit codes."""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest
from click.testing import CliRunner

from spellkit.cli import cli
from spellkit.detect import ErrorClass
from spellkit.editops import EditType
from spellkit.inject import GoldRecord, load_gold
from spellkit.metrics import load_predictions
from spellkit.scorer import FourGramModel, MaskedQuery

DATA = Path(__file__).parent / "data"
LEXICON = str(DATA / "demo_lexicon.txt")
MODEL = str(DATA / "fourgram.model")


@pytest.fixture()
def runner():
    return CliRunner()


class TestTextUtilities:
    def test_normalize_file(self, runner, tmp_path):
        src = tmp_path / "in.txt"
        src.write_text("علي می رود", encoding="utf-8")
        result = runner.invoke(cli, ["normalize", "--in", str(src)])
        assert result.exit_code == 0
        assert result.output == "علی می‌رود"

    def test_normalize_custom_rules(self, runner, tmp_path):
        rules = tmp_path / "rules.json"
        rules.write_text(
            json.dumps(
                {
                    "arabic_map": {},
                    "diacritics": [],
                    "kashida": "",
                    "prefixes": [],
                    "suffixes": [],
                }
            ),
            encoding="utf-8",
        )
        src = tmp_path / "in.txt"
        src.write_text("علي می رود", encoding="utf-8")
        result = runner.invoke(
            cli, ["normalize", "--in", str(src), "--rules", str(rules)]
        )
        assert result.exit_code == 0
        assert result.output == "علي می رود"  # defaults disabled

    def test_lexicon_build_and_info(self, runner, tmp_path):
        corpus = tmp_path / "corpus.txt"
        corpus.write_text("مایع در کبد.\nمایع نشد!\n", encoding="utf-8")
        out = tmp_path / "lex.txt"
        result = runner.invoke(
            cli, ["lexicon", "build", "--corpus", str(corpus), "--out", str(out)]
        )
        assert result.exit_code == 0
        assert "4 entries" in result.output
        assert out.read_text(encoding="utf-8").splitlines() == sorted(
            ["مایع", "در", "کبد", "نشد"]
        )

        info = runner.invoke(cli, ["lexicon", "info", str(out)])
        assert info.exit_code == 0
        payload = json.loads(info.output)
        assert payload["entries"] == 4
        assert payload["sources"] == {"lexicon": 4}

    def test_lexicon_merge(self, runner, tmp_path):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        out = tmp_path / "ab.txt"
        a.write_text("اب\nجد\n", encoding="utf-8")
        b.write_text("جد\nهوز\n", encoding="utf-8")
        result = runner.invoke(cli, ["lexicon", "merge", str(a), str(b), "--out", str(out)])
        assert result.exit_code == 0
        assert "3 entries" in result.output
        assert out.read_text(encoding="utf-8").splitlines() == ["اب", "جد", "هوز"]

    def test_candidates(self, runner):
        result = runner.invoke(
            cli,
            ["candidates", "--lexicon", LEXICON, "--word", "مایغ", "--max-dist", "1"],
        )
        assert result.exit_code == 0
        assert json.loads(result.output) == [
            {"word": "مایع", "distance": 1, "edit_type": "substitution"}
        ]

    def test_perto_code(self, runner):
        result = runner.invoke(cli, ["perto", "پرگاز"])
        assert result.exit_code == 0
        assert result.output.strip() == "14904"

    def test_perto_match(self, runner):
        result = runner.invoke(cli, ["perto", "کار", "--match-with", "گار"])
        assert result.exit_code == 0
        payload = json.loads(result.output)
        assert payload["code_a"] == payload["code_b"] == "904"
        assert payload["match"] is True


class TestScoring:
    def test_train_and_score(self, runner, tmp_path):
        corpus = tmp_path / "corpus.txt"
        corpus.write_text(
            "در محل مایع مشاهده نشد\nدر محل مایع مشاهده نشد\n", encoding="utf-8"
        )
        out = tmp_path / "lm.bin"
        result = runner.invoke(
            cli,
            [
                "train-fourgram", "--corpus", str(corpus), "--out", str(out),
                "--weights", "0.7,0.1,0.1,0.1",
            ],
        )
        assert result.exit_code == 0
        assert "trained on 2 sentences" in result.output
        model = FourGramModel.load(str(out))
        dist = model.score(
            MaskedQuery(
                tokens=("در", "محل", "مایع", "مشاهده", "نشد"),
                mask_index=2,
                vocabulary_of_interest=("مایع", "اب"),
            )
        )
        assert dist["مایع"] > dist["اب"]

    def test_score_with_model(self, runner):
        result = runner.invoke(
            cli,
            [
                "score", "--model", MODEL,
                "--sentence", "در محل بررسی مایغ مشاهده نشد",
                "--mask", "3", "--candidates", "مایع,مایل",
            ],
        )
        assert result.exit_code == 0
        scores = json.loads(result.output)["scores"]
        assert set(scores) == {"مایع", "مایل"}
        assert scores["مایع"] > scores["مایل"]
        assert sum(scores.values()) == pytest.approx(1.0)

    def test_score_requires_one_backend(self, runner):
        result = runner.invoke(
            cli,
            [
                "score", "--model", MODEL, "--endpoint", "http://h:1",
                "--sentence", "اب", "--mask", "0", "--candidates", "اب",
            ],
        )
        assert result.exit_code != 0


class TestPipeline:
    def test_check_jsonl(self, runner, tmp_path):
        src = tmp_path / "in.txt"
        src.write_text(
            "اندازه کبد طبیعی است\nدر محل بررسی مایغ مشاهده نشد\n\n",
            encoding="utf-8",
        )
        result = runner.invoke(
            cli,
            ["check", "--lexicon", LEXICON, "--model", MODEL, "--in", str(src)],
        )
        assert result.exit_code == 0
        records = [json.loads(line) for line in result.output.splitlines()]
        assert records[0] == {"sentence_id": 0, "detection": None}
        assert records[1]["detection"] == {"token_index": 3, "error_class": "NonWord"}
        assert records[2] == {"sentence_id": 2, "detection": None}

    def test_correct_jsonl_with_predictions(self, runner, tmp_path):
        src = tmp_path / "in.txt"
        src.write_text(
            "در محل بررسی مایغ مشاهده نشد\nاندازه کبد طبیعی است\n",
            encoding="utf-8",
        )
        pred_out = tmp_path / "preds.jsonl"
        result = runner.invoke(
            cli,
            [
                "correct", "--lexicon", LEXICON, "--model", MODEL,
                "--in", str(src), "--pred-out", str(pred_out),
            ],
        )
        assert result.exit_code == 0
        records = [json.loads(line) for line in result.output.splitlines()]
        fix = records[0]["corrections"][0]
        assert fix["suggested"] == "مایع"
        assert fix["error_class"] == "NonWord"
        assert records[0]["corrected_text"] == "در محل بررسی مایع مشاهده نشد"
        assert records[1]["corrections"] == []

        preds = load_predictions(pred_out)
        assert len(preds) == 1
        assert preds[0].sentence_id == 0
        assert preds[0].replacement == "مایع"

    def test_correct_perto_off(self, runner, tmp_path):
        src = tmp_path / "in.txt"
        src.write_text("در محل بررسی مایغ مشاهده نشد\n", encoding="utf-8")
        result = runner.invoke(
            cli,
            [
                "correct", "--lexicon", LEXICON, "--model", MODEL,
                "--in", str(src), "--perto", "off",
            ],
        )
        assert result.exit_code == 0
        fix = json.loads(result.output.splitlines()[0])["corrections"][0]
        assert fix["used_perto"] is False


class TestEvaluationCommands:
    def test_inject_roundtrip(self, runner, tmp_path):
        spec = tmp_path / "spec.json"
        spec.write_text(
            json.dumps(
                {"nonword_per_10k": 1000.0, "realword_per_10k": 0.0, "rng_seed": 1}
            ),
            encoding="utf-8",
        )
        out_corpus = tmp_path / "bad.txt"
        out_gold = tmp_path / "gold.jsonl"
        result = runner.invoke(
            cli,
            [
                "inject", "--spec", str(spec),
                "--corpus", str(DATA / "demo_corpus.txt"),
                "--lexicon", LEXICON,
                "--out-corpus", str(out_corpus),
                "--out-gold", str(out_gold),
            ],
        )
        assert result.exit_code == 0
        assert "3 errors into 29 sentences" in result.output
        gold = load_gold(out_gold)
        assert len(gold) == 3
        corrupted = out_corpus.read_text(encoding="utf-8").splitlines()
        for rec in gold:
            assert corrupted[rec.sentence_id].split()[rec.token_index] == rec.corrupted

    def test_inject_seed_override(self, runner, tmp_path):
        spec = tmp_path / "spec.json"
        spec.write_text(
            json.dumps({"nonword_per_10k": 1000.0, "realword_per_10k": 0.0}),
            encoding="utf-8",
        )
        outputs = {}
        for seed in (1, 2):
            out_corpus = tmp_path / f"bad{seed}.txt"
            out_gold = tmp_path / f"gold{seed}.jsonl"
            result = runner.invoke(
                cli,
                [
                    "inject", "--spec", str(spec),
                    "--corpus", str(DATA / "demo_corpus.txt"),
                    "--lexicon", LEXICON,
                    "--out-corpus", str(out_corpus),
                    "--out-gold", str(out_gold),
                    "--seed", str(seed),
                ],
            )
            assert result.exit_code == 0
            outputs[seed] = out_gold.read_bytes()
        assert outputs[1] and outputs[1] != outputs[2]

    def test_eval_formats(self, runner, tmp_path):
        gold = tmp_path / "gold.jsonl"
        rec = GoldRecord(
            sentence_id=0,
            token_index=3,
            original="مایع",
            corrupted="مایغ",
            error_class=ErrorClass.NON_WORD,
            edit_type=EditType.SUBSTITUTION,
            distance=1,
        )
        gold.write_text(rec.to_json() + "\n", encoding="utf-8")
        pred = tmp_path / "pred.jsonl"
        pred.write_text(
            json.dumps(
                {
                    "sentence_id": 0,
                    "token_index": 3,
                    "error_class": "NonWord",
                    "replacement": "مایع",
                },
                ensure_ascii=False,
            )
            + "\n",
            encoding="utf-8",
        )
        base = [
            "eval", "--gold", str(gold), "--pred", str(pred),
            "--task", "NonWordCorrection", "--name", "demo",
        ]
        text = runner.invoke(cli, base)
        assert text.exit_code == 0
        assert text.output.splitlines()[0].split()[0] == "Configuration"
        assert "demo" in text.output and "100.0" in text.output

        as_json = runner.invoke(cli, base + ["--format", "json"])
        payload = json.loads(as_json.output)
        assert payload[0]["configuration"] == "demo"
        assert payload[0]["f1"] == "100.0"

        as_csv = runner.invoke(cli, base + ["--format", "csv"])
        assert as_csv.output.splitlines()[1].startswith("demo,100.0")

    def test_eval_rejects_unknown_task(self, runner, tmp_path):
        empty = tmp_path / "x.jsonl"
        empty.write_text("", encoding="utf-8")
        result = runner.invoke(
            cli,
            ["eval", "--gold", str(empty), "--pred", str(empty), "--task", "Nope"],
        )
        assert result.exit_code != 0


def run_main(*args):
    env = {k: v for k, v in os.environ.items() if k != "SPELLKIT_CONFIG"}
    return subprocess.run(
        [sys.executable, "-m", "spellkit.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


class TestExitCodes:
    def test_version_exits_zero(self):
        proc = run_main("--version")
        assert proc.returncode == 0
        assert "spellkit" in proc.stdout

    def test_usage_error_is_one(self):
        proc = run_main(
            "score", "--model", "m", "--endpoint", "e",
            "--sentence", "اب", "--mask", "0", "--candidates", "اب",
        )
        assert proc.returncode == 1
        assert "usage error" in proc.stderr

    def test_missing_config_is_two(self):
        proc = run_main("serve")
        assert proc.returncode == 2
        assert "config error" in proc.stderr

    def test_runtime_error_is_three(self):
        proc = run_main("normalize", "--in", "/nonexistent/input.txt")
        assert proc.returncode == 3
        assert "error" in proc.stderr
