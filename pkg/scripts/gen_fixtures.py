"""Regenerate the committed demo model, pinned config, and golden responses.

Run from the repository root:

    python3 scripts/gen_fixtures.py            # model, lexicon, config, goldens
    SPELLKIT_NUMBA=0 python3 scripts/gen_fixtures.py --health-only

The golden files freeze the byte-exact service responses for the pinned
engine config; the health response is stored once per distance backend
because it reports which backend is active.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

from fastapi.testclient import TestClient

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "tests" / "data"
GOLDEN = DATA / "golden"

CHECK_TEXT = "در محل بررسی مایغ مشاهده نشد. در سمت چپ کبد توده اینترارکتال است."
APPLY_CORRECTIONS = [
    {"sentence_index": 0, "token_index": 3, "replacement": "مایع"},
    {"sentence_index": 1, "token_index": 5, "replacement": "اینتراداکتال"},
]


def build_model() -> None:
    from spellkit import build_from_corpus, save_lexicon, train_fourgram
    from spellkit.normalize import normalize, tokenize

    corpus_path = DATA / "demo_corpus.txt"
    lex = build_from_corpus(corpus_path)
    save_lexicon(lex, DATA / "demo_lexicon.txt")
    sentences = [
        [t.surface for t in tokenize(normalize(line).content)]
        for line in corpus_path.read_text("utf-8").splitlines()
        if line.strip()
    ]
    model = train_fourgram(sentences)
    model.save(DATA / "fourgram.model")
    config = {
        "lexicon_paths": ["demo_lexicon.txt"],
        "fourgram_model": "fourgram.model",
    }
    (DATA / "engine_config.json").write_text(
        json.dumps(config, indent=2) + "\n", "utf-8"
    )


def golden(client: TestClient, health_only: bool) -> None:
    from spellkit._kernels import backend_name

    health = client.get("/v1/health")
    assert health.status_code == 200, health.content
    (GOLDEN / f"health_response_{backend_name()}.json").write_bytes(health.content)
    if health_only:
        return

    check = client.post("/v1/check", json={"text": CHECK_TEXT})
    assert check.status_code == 200, check.content
    (GOLDEN / "check_request.json").write_text(
        json.dumps({"text": CHECK_TEXT}, ensure_ascii=False) + "\n", "utf-8"
    )
    (GOLDEN / "check_response.json").write_bytes(check.content)

    apply_body = {"text": CHECK_TEXT, "corrections": APPLY_CORRECTIONS}
    applied = client.post("/v1/apply", json=apply_body)
    assert applied.status_code == 200, applied.content
    (GOLDEN / "apply_request.json").write_text(
        json.dumps(apply_body, ensure_ascii=False) + "\n", "utf-8"
    )
    (GOLDEN / "apply_response.json").write_bytes(applied.content)

    summary = json.loads(check.content)
    for i, sent in enumerate(summary["sentences"]):
        dets = [(d["token_index"], d["error_class"]) for d in sent["detections"]]
        corrs = [
            (c["token_index"], c["original"], c["suggested"])
            for c in sent["corrections"]
        ]
        print(f"sentence {i}: detections={dets} corrections={corrs}")
    print("corrected:", summary["corrected_text"])


def main() -> None:
    health_only = "--health-only" in sys.argv
    if not health_only:
        build_model()
    from spellkit.engine import Engine, EngineConfig
    from spellkit.service import create_app

    engine = Engine.from_config(EngineConfig.load(DATA / "engine_config.json"))
    with TestClient(create_app(engine)) as client:
        golden(client, health_only)
    print("backend:", os.environ.get("SPELLKIT_NUMBA", "default"))


if __name__ == "__main__":
    main()
