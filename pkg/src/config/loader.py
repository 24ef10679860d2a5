"""Layered defaults shared by the CLI commands and the experiment runner."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Mapping

import yaml

from rainbowthreshold.budget import DEFAULT_LIMITS, DEFAULT_TIME_LIMIT

__all__ = [
    "ConfigurationError",
    "Defaults",
    "load_defaults",
    "load_settings_file",
]

REPO_ROOT = Path(__file__).resolve().parents[2]
DEFAULT_CONFIG_PATH = REPO_ROOT / "config" / "defaults.yml"

_BUDGET_KEYS: dict[str, str] = {
    "max_sequences": "sequences",
    "max_orderings": "orderings",
    "max_search_nodes": "search_nodes",
    "max_canonical_leaves": "canonical_leaves",
    "max_iso_vertices": "iso_vertices",
}

_ENVIRONMENT_BUDGETS: dict[str, str] = {
    "RT_MAX_SEQUENCES": "sequences",
    "RT_MAX_ORDERINGS": "orderings",
    "RT_MAX_SEARCH_NODES": "search_nodes",
    "RT_MAX_CANONICAL_LEAVES": "canonical_leaves",
    "RT_MAX_ISO_VERTICES": "iso_vertices",
}

# iso_vertices may be 0; every other limit must be positive
_ZERO_ALLOWED = frozenset({"iso_vertices"})


class ConfigurationError(RuntimeError):
    """Raised when configuration validation fails."""


@dataclass(frozen=True)
class Defaults:
    """Resolved defaults used by every command."""

    project_root: Path
    settings_path: Path
    output_dir: Path
    export_formats: tuple[str, ...]
    budget_limits: Mapping[str, int]
    time_limit: float | None
    seed: int | None

    def as_dict(self) -> dict[str, Any]:
        """Return a serialisable mapping for introspection."""

        return {
            "project_root": str(self.project_root),
            "settings_path": str(self.settings_path),
            "output_dir": str(self.output_dir),
            "export_formats": ",".join(self.export_formats),
            "budget_limits": dict(self.budget_limits),
            "time_limit": self.time_limit,
            "seed": self.seed,
        }


def _env(env: Mapping[str, str], key: str, default: str) -> str:
    value = env.get(key)
    return value if value else default


def load_settings_file(path: Path) -> Dict[str, Any]:
    if not path.exists():
        return {}
    suffix = path.suffix.lower()
    if suffix in {".yaml", ".yml"}:
        with path.open("r", encoding="utf-8") as handle:
            data = yaml.safe_load(handle) or {}
    elif suffix == ".json":
        data = json.loads(path.read_text(encoding="utf-8"))
    else:
        raise ConfigurationError(f"Unsupported configuration format: {path}")
    if not isinstance(data, Mapping):
        raise ConfigurationError(f"{path} must contain a mapping at the top level")
    return dict(data)


def _section(settings: Mapping[str, Any], name: str) -> Mapping[str, Any]:
    value = settings.get(name) or {}
    if not isinstance(value, Mapping):
        raise ConfigurationError(f"Configuration section {name!r} must be a mapping.")
    return value


def _parse_int(key: str, value: Any, *, minimum: int = 0) -> int:
    try:
        parsed = int(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{key} must be an integer.") from None
    if parsed < minimum:
        if minimum == 0:
            raise ConfigurationError(f"{key} must not be negative.")
        raise ConfigurationError(f"{key} must be at least {minimum}.")
    return parsed


def _parse_limit(key: str, name: str, value: Any) -> int:
    return _parse_int(key, value, minimum=0 if name in _ZERO_ALLOWED else 1)


def _parse_seconds(key: str, value: Any) -> float | None:
    try:
        parsed = float(value)
    except (TypeError, ValueError):
        raise ConfigurationError(f"{key} must be a number of seconds.") from None
    return parsed if parsed > 0 else None


def load_defaults(env: Mapping[str, str] | None = None) -> Defaults:
    """Merge ``config/defaults.yml`` (or ``RT_SETTINGS_FILE``) with ``RT_*`` environment overrides."""

    env = os.environ if env is None else env
    project_root = Path(_env(env, "RT_ROOT", str(REPO_ROOT))).resolve()
    settings_path = Path(
        _env(env, "RT_SETTINGS_FILE", str(project_root / "config" / "defaults.yml"))
    ).resolve()
    settings = load_settings_file(settings_path)

    budgets = _section(settings, "budgets")
    limits = dict(DEFAULT_LIMITS)
    for key, name in _BUDGET_KEYS.items():
        if budgets.get(key) is not None:
            limits[name] = _parse_limit(key, name, budgets[key])
    for key, name in _ENVIRONMENT_BUDGETS.items():
        if env.get(key):
            limits[name] = _parse_limit(key, name, env[key])
    time_limit = _parse_seconds(
        "RT_TIME_LIMIT", env.get("RT_TIME_LIMIT") or budgets.get("time_limit_seconds", DEFAULT_TIME_LIMIT)
    )

    output = _section(settings, "output")
    output_dir = Path(_env(env, "RT_OUTPUT_DIR", str(output.get("dir") or "reports")))
    if not output_dir.is_absolute():
        output_dir = project_root / output_dir
    formats_raw = env.get("RT_EXPORT_FORMATS")
    if formats_raw:
        export_formats = tuple(fmt.strip() for fmt in formats_raw.split(",") if fmt.strip())
    else:
        export_formats = tuple(str(fmt) for fmt in output.get("export_formats") or ())
    if not export_formats:
        export_formats = ("json", "csv")

    experiments = _section(settings, "experiments")
    seed_raw = env.get("RT_SEED") or experiments.get("seed")
    seed = _parse_int("RT_SEED", seed_raw) if seed_raw not in (None, "") else None

    return Defaults(
        project_root=project_root,
        settings_path=settings_path,
        output_dir=output_dir.resolve(),
        export_formats=export_formats,
        budget_limits=limits,
        time_limit=time_limit,
        seed=seed,
    )
