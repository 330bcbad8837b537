"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 configuration error, 3 runtime
error.  ``check`` and ``correct`` treat each input line as one sentence so
line numbers align with corpus sentence ids in evaluation workflows.
"""

from __future__ import annotations

import json
import logging
import os
import sys

import click

from . import __version__
from .detect import DetectorConfig, ErrorClass, detect_nonword, detect_realword
from .correct import correct_nonword, correct_realword
from .editops import CandidateIndex, generate_candidates
from .engine import EngineConfig, _correction_json
from .errors import ConfigError, NoCorrectionError, SpellkitError
from .inject import (
    InjectionSpec,
    inject_errors,
    load_corpus,
    save_corpus,
    save_gold,
    load_gold,
)
from .lexicon import build_from_corpus, load_lexicon, merge, save_lexicon
from .metrics import (
    ReportRow,
    Task,
    evaluate,
    load_predictions,
    render_csv,
    render_json,
    render_text,
)
from .normalize import (
    NormalizationConfig,
    normalize,
    segment_sentences,
    tokenize,
    Sentence,
)
from .perto import PertoTable, perto_code, perto_match
from .scorer import (
    DEFAULT_ADD_K,
    DEFAULT_WEIGHTS,
    FourGramModel,
    MaskedQuery,
    RemoteScorer,
    train_fourgram,
)


@click.group()
@click.option("--config", "config_path", envvar="SPELLKIT_CONFIG", default=None,
              help="Engine config file (JSON); also via SPELLKIT_CONFIG.")
@click.option("--log-level", default="warning",
              type=click.Choice(["debug", "info", "warning", "error"]))
@click.version_option(version=__version__, prog_name="spellkit")
@click.pass_context
def cli(ctx, config_path, log_level):
    logging.basicConfig(level=getattr(logging, log_level.upper()))
    ctx.obj = {"config_path": config_path}


def _read_text(path: str | None) -> str:
    if path and path != "-":
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    return sys.stdin.read()


def _echo_json(data) -> None:
    click.echo(json.dumps(data, ensure_ascii=False))


# -- text and lexicon utilities ------------------------------------------------


@cli.command("normalize")
@click.option("--in", "in_path", default=None, help="Input file (default stdin).")
@click.option("--rules", default=None, help="Normalization rules JSON.")
def normalize_cmd(in_path, rules):
    """Canonicalize text and print it."""
    cfg = NormalizationConfig.load(rules) if rules else None
    click.echo(normalize(_read_text(in_path), cfg).content, nl=False)


@cli.group("lexicon")
def lexicon_group():
    """Build, merge and inspect word lists."""


@lexicon_group.command("build")
@click.option("--corpus", required=True, help="Raw text corpus.")
@click.option("--out", required=True, help="Output word list.")
def lexicon_build(corpus, out):
    lex = build_from_corpus(corpus)
    save_lexicon(lex, out)
    click.echo(f"{len(lex)} entries")


@lexicon_group.command("merge")
@click.argument("general")
@click.argument("specialized")
@click.option("--out", required=True)
def lexicon_merge(general, specialized, out):
    merged = merge(
        load_lexicon(general, source="general"),
        load_lexicon(specialized, source="specialized"),
    )
    save_lexicon(merged, out)
    click.echo(f"{len(merged)} entries")


@lexicon_group.command("info")
@click.argument("path")
def lexicon_info(path):
    lex = load_lexicon(path, source="lexicon")
    _echo_json({"entries": len(lex), "sources": lex.source_counts})


@cli.command("candidates")
@click.option("--lexicon", "lexicon_path", required=True)
@click.option("--word", required=True)
@click.option("--max-dist", default=2, type=click.IntRange(1, 2))
def candidates_cmd(lexicon_path, word, max_dist):
    """List lexicon words within edit distance of WORD."""
    lex = load_lexicon(lexicon_path, source="lexicon")
    cands = generate_candidates(word, lex, max_dist)
    _echo_json(
        [
            {"word": c.word, "distance": c.distance, "edit_type": c.edit_type.value}
            for c in cands
        ]
    )


@cli.command("perto")
@click.argument("word")
@click.option("--match-with", default=None, help="Second word to compare codes.")
@click.option("--table", "table_path", default=None)
def perto_cmd(word, match_with, table_path):
    """Print the orthographic code of WORD (or compare two words)."""
    table = PertoTable.load(table_path) if table_path else None
    if match_with is None:
        click.echo(perto_code(word, table))
    else:
        _echo_json(
            {
                "a": word,
                "b": match_with,
                "code_a": perto_code(word, table),
                "code_b": perto_code(match_with, table),
                "match": perto_match(word, match_with, table),
            }
        )


# -- scoring --------------------------------------------------------------------


@cli.command("train-fourgram")
@click.option("--corpus", required=True, help="Raw text, one sentence per line.")
@click.option("--out", required=True, help="Model output path.")
@click.option("--weights", default=None, help="Comma list for orders 4,3,2,1.")
@click.option("--add-k", default=DEFAULT_ADD_K, type=float)
def train_fourgram_cmd(corpus, out, weights, add_k):
    """Train the bidirectional four-gram model."""
    parsed = (
        tuple(float(w) for w in weights.split(",")) if weights else DEFAULT_WEIGHTS
    )
    with open(corpus, encoding="utf-8") as fh:
        sentences = [
            [t.surface for t in tokenize(normalize(line).content)]
            for line in fh
            if line.strip()
        ]
    model = train_fourgram(sentences, weights=parsed, add_k=add_k)
    model.save(out)
    click.echo(f"trained on {len(sentences)} sentences -> {out}")


@cli.command("score")
@click.option("--model", default=None, help="Four-gram model path.")
@click.option("--endpoint", default=None, help="Remote scorer URL.")
@click.option("--sentence", required=True)
@click.option("--mask", required=True, type=int)
@click.option("--candidates", "candidate_csv", required=True, help="Comma list.")
def score_cmd(model, endpoint, sentence, mask, candidate_csv):
    """Score candidate words for the masked position."""
    if bool(model) == bool(endpoint):
        raise click.UsageError("exactly one of --model/--endpoint required")
    scorer = FourGramModel.load(model) if model else RemoteScorer(endpoint)
    tokens = tuple(t.surface for t in tokenize(normalize(sentence).content))
    query = MaskedQuery(
        tokens=tokens,
        mask_index=mask,
        vocabulary_of_interest=tuple(candidate_csv.split(",")),
    )
    dist = scorer.score(query)
    _echo_json({"scores": dist.scores})


# -- pipeline -------------------------------------------------------------------


def _line_sentences(in_path):
    for line in _read_text(in_path).splitlines():
        norm = normalize(line)
        yield Sentence(
            tokens=tuple(tokenize(norm.content)),
            source_span=(0, len(norm.content)),
        ), norm.content


def _build_components(lexicon_path, model, endpoint, max_dist, margin, top_k):
    if bool(model) == bool(endpoint):
        raise click.UsageError("exactly one of --model/--endpoint required")
    lex = load_lexicon(lexicon_path, source="lexicon")
    index = CandidateIndex(lex, max_dist=2)
    scorer = FourGramModel.load(model) if model else RemoteScorer(endpoint)
    dcfg = DetectorConfig(max_dist=max_dist, margin=margin, top_k=top_k)
    return lex, index, scorer, dcfg


@cli.command("check")
@click.option("--lexicon", "lexicon_path", required=True)
@click.option("--model", default=None)
@click.option("--endpoint", default=None)
@click.option("--in", "in_path", default=None, help="Input file (default stdin).")
@click.option("--max-dist", default=2, type=click.IntRange(1, 2))
@click.option("--margin", default=1.0, type=float)
@click.option("--top-k", default=10, type=int)
def check_cmd(lexicon_path, model, endpoint, in_path, max_dist, margin, top_k):
    """Detect the first error per input line; JSONL output."""
    lex, index, scorer, dcfg = _build_components(
        lexicon_path, model, endpoint, max_dist, margin, top_k
    )
    for sid, (sent, _) in enumerate(_line_sentences(in_path)):
        detection = detect_nonword(sent, lex)
        if detection is None and sent.tokens:
            detection = detect_realword(sent, index, scorer, dcfg)
        record = {"sentence_id": sid, "detection": None}
        if detection is not None:
            record["detection"] = {
                "token_index": detection.token_index,
                "error_class": detection.error_class.value,
            }
        _echo_json(record)


@cli.command("correct")
@click.option("--lexicon", "lexicon_path", required=True)
@click.option("--model", default=None)
@click.option("--endpoint", default=None)
@click.option("--in", "in_path", default=None, help="Input file (default stdin).")
@click.option("--max-dist", default=2, type=click.IntRange(1, 2))
@click.option("--margin", default=1.0, type=float)
@click.option("--top-k", default=10, type=int)
@click.option("--perto", default="on", type=click.Choice(["on", "off"]))
@click.option("--table", "table_path", default=None)
@click.option("--pred-out", default=None, help="Also write eval-ready JSONL.")
def correct_cmd(
    lexicon_path, model, endpoint, in_path, max_dist, margin, top_k,
    perto, table_path, pred_out,
):
    """Detect and correct the first error per input line; JSONL output."""
    lex, index, scorer, dcfg = _build_components(
        lexicon_path, model, endpoint, max_dist, margin, top_k
    )
    table = PertoTable.load(table_path) if table_path else None
    perto_on = perto == "on"
    pred_lines = []
    for sid, (sent, content) in enumerate(_line_sentences(in_path)):
        record = {"sentence_id": sid, "corrections": [], "corrected_text": content}
        detection = detect_nonword(sent, lex)
        if detection is None and sent.tokens:
            detection = detect_realword(sent, index, scorer, dcfg)
        if detection is not None:
            try:
                if detection.error_class == ErrorClass.NON_WORD:
                    correction = correct_nonword(
                        sent, detection, index, scorer, dcfg, table,
                        perto_enabled=perto_on,
                    )
                else:
                    correction = correct_realword(
                        sent, detection, index, scorer, dcfg, table,
                        perto_enabled=perto_on,
                    )
            except NoCorrectionError:
                correction = None
            replacement = correction.replacement if correction else None
            if correction is not None:
                record["corrections"].append(
                    dict(
                        _correction_json(correction),
                        error_class=detection.error_class.value,
                    )
                )
                record["corrected_text"] = " ".join(correction.corrected_tokens)
            pred_lines.append(
                {
                    "sentence_id": sid,
                    "token_index": detection.token_index,
                    "error_class": detection.error_class.value,
                    "replacement": replacement,
                }
            )
        _echo_json(record)
    if pred_out:
        with open(pred_out, "w", encoding="utf-8") as fh:
            for line in pred_lines:
                fh.write(json.dumps(line, ensure_ascii=False) + "\n")


# -- evaluation harness -----------------------------------------------------------


@cli.command("inject")
@click.option("--spec", "spec_path", default=None, help="InjectionSpec JSON.")
@click.option("--corpus", required=True, help="Tokenized corpus, space-joined lines.")
@click.option("--lexicon", "lexicon_path", required=True)
@click.option("--out-corpus", required=True)
@click.option("--out-gold", required=True)
@click.option("--seed", default=None, type=int, help="Overrides the rng_seed in --spec.")
def inject_cmd(spec_path, corpus, lexicon_path, out_corpus, out_gold, seed):
    """Corrupt a corpus with synthetic errors and write gold records."""
    spec = InjectionSpec.load(spec_path) if spec_path else InjectionSpec()
    if seed is not None:
        import dataclasses

        spec = dataclasses.replace(spec, rng_seed=seed)
    lex = load_lexicon(lexicon_path, source="lexicon")
    sentences = load_corpus(corpus)
    corrupted, gold = inject_errors(sentences, spec, lex)
    save_corpus(corrupted, out_corpus)
    save_gold(gold, out_gold)
    click.echo(f"{len(gold)} errors into {len(sentences)} sentences")


@cli.command("eval")
@click.option("--gold", "gold_path", required=True)
@click.option("--pred", "pred_path", required=True)
@click.option(
    "--task",
    required=True,
    type=click.Choice([t.value for t in Task]),
)
@click.option("--name", default="run", help="Row label in the report.")
@click.option("--format", "fmt", default="text", type=click.Choice(["text", "json", "csv"]))
def eval_cmd(gold_path, pred_path, task, name, fmt):
    """Score predictions against gold records."""
    metrics = evaluate(load_predictions(pred_path), load_gold(gold_path), Task(task))
    rows = [ReportRow(name=name, metrics=metrics)]
    renderer = {"text": render_text, "json": render_json, "csv": render_csv}[fmt]
    click.echo(renderer(rows), nl=False)


@cli.command("serve")
@click.option("--bind", envvar="SPELLKIT_BIND", default="127.0.0.1:8000")
@click.pass_context
def serve_cmd(ctx, bind):
    """Run the HTTP service."""
    from .service import serve

    path = ctx.obj.get("config_path")
    if not path:
        raise ConfigError("no engine config: pass --config or set SPELLKIT_CONFIG")
    serve(EngineConfig.load(path), bind)


def main() -> None:
    try:
        cli(standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"usage error: {exc.format_message()}", err=True)
        sys.exit(1)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except click.Abort:
        sys.exit(3)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    except SpellkitError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(3)
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(3)
    sys.exit(0)


if __name__ == "__main__":
    main()
