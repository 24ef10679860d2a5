from __future__ import annotations

import importlib
import json
import logging
import sys
from types import ModuleType

import pytest


def _reload_logging(monkeypatch: pytest.MonkeyPatch, **env: str) -> ModuleType:
    for key, value in env.items():
        monkeypatch.setenv(key, value)
    sys.modules.pop("rainbowthreshold.logging_config", None)
    module = importlib.import_module("rainbowthreshold.logging_config")
    root = logging.getLogger()
    monkeypatch.setattr(root, "handlers", list(root.handlers))
    monkeypatch.setattr(root, "level", root.level)
    return module


def test_structured_logging_includes_run_id(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    monkeypatch.delenv("RT_LOG_JSON", raising=False)
    logging_module = _reload_logging(monkeypatch, RT_RUN_ID="test-run-id")
    logging_module.configure_logging("INFO")
    logger = logging_module.get_logger("test.logger")

    logger.info("hello world")

    captured = capsys.readouterr()
    assert captured.out == ""
    output = captured.err.strip()
    assert "hello world" in output
    assert "[run=test-run-id]" in output
    assert output.startswith("20")


def test_json_logging_mode(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    logging_module = _reload_logging(monkeypatch, RT_LOG_JSON="true")
    logging_module.configure_logging("INFO")
    logger = logging_module.get_logger("json.logger")

    logger.info("structured message", extra={"k": 2, "n": 7})

    payload = json.loads(capsys.readouterr().err.strip())
    assert payload["message"] == "structured message"
    assert payload["run_id"] == logging_module.get_run_id()
    assert payload["k"] == 2 and payload["n"] == 7


def test_default_level_hides_info(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    monkeypatch.delenv("RT_LOG_LEVEL", raising=False)
    logging_module = _reload_logging(monkeypatch)
    logger = logging_module.get_logger("quiet.logger")

    logger.info("not shown")
    logger.warning("shown")

    output = capsys.readouterr().err
    assert "not shown" not in output
    assert "shown" in output
