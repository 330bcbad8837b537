from pathlib import Path

import pytest
from hypothesis import settings

from spellkit.editops import CandidateIndex
from spellkit.engine import Engine, EngineConfig
from spellkit.scorer import train_fourgram
from spellkit.synth import generate

settings.register_profile("suite", deadline=None, derandomize=True)
settings.load_profile("suite")

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def demo_engine():
    return Engine.from_config(EngineConfig.load(DATA / "engine_config.json"))


@pytest.fixture(scope="session")
def synth_corpus():
    return generate(3000, seed=7)


@pytest.fixture(scope="session")
def synth_model(synth_corpus):
    return train_fourgram(synth_corpus.sentences)


@pytest.fixture(scope="session")
def synth_index(synth_corpus):
    return CandidateIndex(synth_corpus.lexicon, max_dist=2)
