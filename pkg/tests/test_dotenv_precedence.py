from __future__ import annotations

import json
import os
from pathlib import Path

import pytest

pytest.importorskip("dotenv")

from src.cli import app  # noqa: E402


def test_cli_prefers_environment_then_dotenv(tmp_path: Path, monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    (tmp_path / "config").mkdir()
    (tmp_path / "config" / "defaults.yml").write_text("experiments:\n  seed: 1\n", encoding="utf-8")
    (tmp_path / ".env").write_text(
        "\n".join([f"RT_ROOT={tmp_path}", "RT_SEED=13", "RT_MAX_ORDERINGS=77", ""]),
        encoding="utf-8",
    )
    monkeypatch.setattr(app, "REPO_ROOT", tmp_path)
    monkeypatch.setenv("RT_MAX_ORDERINGS", "88")

    try:
        argv = ["experiment", "--name", "nongood-fraction", "--k", "1", "--n", "12", "--ell", "3", "--trials", "10"]
        assert app.main(argv) == 0

        (report,) = json.loads(capsys.readouterr().out)
        assert report["parameters"]["seed"] == 13
        assert os.environ["RT_MAX_ORDERINGS"] == "88"
    finally:
        for key in ("RT_ROOT", "RT_SEED"):
            os.environ.pop(key, None)
