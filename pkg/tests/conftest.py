"""
Shared fixtures for the flowkit test suite.

Run with ``python -m pytest tests/``. ``--regen-golden`` rewrites the corpus
golden files from the current implementation instead of comparing them.
"""

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT))

from core.config import FlowkitConfig, set_config  # noqa: E402
from dsl.parser import parse  # noqa: E402
from model.builder import ModelBuilder  # noqa: E402
from simulation.scenario import Scenario, load_scenario  # noqa: E402

CORPUS_DIR = ROOT / "corpus"


def pytest_addoption(parser):
    parser.addoption(
        "--regen-golden",
        action="store_true",
        default=False,
        help="Rewrite corpus golden files instead of comparing against them",
    )


@pytest.fixture
def regen_golden(request) -> bool:
    return request.config.getoption("--regen-golden")


@pytest.fixture(autouse=True)
def fresh_config():
    """Every test starts from default configuration, independent of the environment."""
    set_config(FlowkitConfig(corpus_dir=str(CORPUS_DIR)))
    yield
    set_config(None)


def load_corpus_model(stem: str):
    result = parse((CORPUS_DIR / f"{stem}.fm").read_bytes(), source_name=f"{stem}.fm")
    assert result.ok, [str(d) for d in result.diagnostics]
    return result.model


def load_corpus_scenario(stem: str, name: str = "default") -> Scenario:
    return load_scenario(CORPUS_DIR / "scenarios" / stem / f"{name}.json")


@pytest.fixture
def corpus_dir() -> Path:
    return CORPUS_DIR


@pytest.fixture
def book_model():
    return load_corpus_model("book")


@pytest.fixture
def speaker_model():
    return load_corpus_model("speaker")


@pytest.fixture
def joboffer_model():
    return load_corpus_model("joboffer")


@pytest.fixture
def callcenter_model():
    return load_corpus_model("callcenter")


@pytest.fixture
def builder() -> ModelBuilder:
    """A builder with one plain thing kind ``item`` declared."""
    b = ModelBuilder()
    b.add_thing("item")
    return b
