"""
Tests for configuration and the framework facade.
"""

import logging

import pytest

from conftest import CORPUS_DIR
from core.config import FlowkitConfig, get_config, set_config
from core.exceptions import ConfigurationError, FileHandlingError, FlowkitError, ValidationError, handle_flowkit_error
from framework import FlowkitFramework


def test_defaults():
    config = FlowkitConfig()
    assert config.default_max_ticks == 1000
    assert config.logging_level == logging.WARNING
    assert config.corpus_dir.endswith("corpus")
    assert config.validate()


def test_from_env(monkeypatch):
    monkeypatch.setenv("FLOWKIT_MAX_TICKS", "25")
    monkeypatch.setenv("FLOWKIT_LOG_LEVEL", "debug")
    monkeypatch.setenv("NO_COLOR", "1")
    set_config(None)
    config = get_config()
    assert config.default_max_ticks == 25
    assert config.log_level == "DEBUG"
    assert config.no_color
    assert config.to_dict()["default_max_ticks"] == 25


def test_bad_max_ticks_in_env(monkeypatch):
    monkeypatch.setenv("FLOWKIT_MAX_TICKS", "many")
    with pytest.raises(ConfigurationError):
        FlowkitConfig.from_env()


@pytest.mark.parametrize("config", [FlowkitConfig(default_max_ticks=0), FlowkitConfig(log_level="chatty")])
def test_invalid_config(config):
    with pytest.raises(ConfigurationError):
        config.validate()


def test_error_rendering():
    error = FlowkitError("boom", error_code="X", context={"k": 1})
    assert str(error) == "[X] boom | Context: {'k': 1}"


class TestFramework:
    def test_check_and_simulate(self):
        framework = FlowkitFramework(FlowkitConfig(corpus_dir=str(CORPUS_DIR)))
        report = framework.check(CORPUS_DIR / "speaker.fm")
        assert report.ok
        assert report.model is not None
        result = framework.simulate(CORPUS_DIR / "speaker.fm", CORPUS_DIR / "scenarios" / "speaker" / "default.json")
        assert result.trace.final_tick == 7
        assert len(result.process) > 0

    def test_require_model_rejects_parse_errors(self, tmp_path):
        path = tmp_path / "broken.fm"
        path.write_text("thing", encoding="utf-8")
        with pytest.raises(ValidationError):
            FlowkitFramework().require_model(path)

    def test_scenario_extension_is_checked(self):
        with pytest.raises(ValidationError):
            FlowkitFramework().simulate(CORPUS_DIR / "book.fm", CORPUS_DIR / "book.fm")

    def test_system_info(self):
        info = FlowkitFramework().get_system_info()
        assert info["encoding"] == "utf-8"
        assert "default_max_ticks" in info["config"]


@pytest.mark.parametrize(
    "error,expected",
    [
        (FileNotFoundError("gone.fm"), FileHandlingError),
        (ValueError("bad"), ValidationError),
        (RuntimeError("odd"), FlowkitError),
    ],
)
def test_foreign_errors_are_wrapped(error, expected):
    wrapped = handle_flowkit_error(error, operation="load")
    assert type(wrapped) is expected
    assert wrapped.context["operation"] == "load"
    assert wrapped.context["error_type"] == type(error).__name__
