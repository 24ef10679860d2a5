"""Arguments and output helpers shared by every ``rts`` subcommand."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import pandas as pd

from rainbowthreshold.budget import Budget
from rainbowthreshold.core_model import Graph, RainbowSequence
from rainbowthreshold.formats import loads_graph, loads_sequence
from rainbowthreshold.logging_config import get_logger

from ..config.loader import Defaults

LOGGER = get_logger(__name__)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INVALID = 2
EXIT_BUDGET = 3

FORMATS = ("json", "text", "csv")


class CommandInputError(RuntimeError):
    """Raised when command arguments are inconsistent with each other or with the input."""


def positive_int(value: str) -> int:
    try:
        parsed = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer (received {value!r})") from None
    if parsed < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer (received {value!r})")
    return parsed


def natural_int(value: str) -> int:
    try:
        parsed = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer (received {value!r})") from None
    if parsed < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer (received {value!r})")
    return parsed


def positive_seconds(value: str) -> float:
    try:
        parsed = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number of seconds (received {value!r})") from None
    if parsed <= 0:
        raise argparse.ArgumentTypeError("time budget must be positive")
    return parsed


def vertex_list(value: str) -> tuple[int, ...]:
    """``"0,2,5"`` or ``"-"`` for the empty set."""

    if value.strip() in {"", "-"}:
        return ()
    try:
        return tuple(int(part) for part in value.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertices (received {value!r})") from None


def add_common_arguments(parser: argparse.ArgumentParser, defaults: Defaults, *, default_format: str = "json") -> None:
    parser.add_argument(
        "--format",
        choices=FORMATS,
        default=default_format,
        help=f"Output format (default: {default_format})",
    )
    parser.add_argument(
        "--output",
        help="Write the payload to this file instead of stdout",
    )
    parser.add_argument(
        "--budget-sequences",
        type=positive_int,
        default=defaults.budget_limits.get("sequences"),
        help="Maximum number of sequences an enumeration may visit",
    )
    parser.add_argument(
        "--budget-orderings",
        type=positive_int,
        default=defaults.budget_limits.get("orderings"),
        help="Maximum number of states the ordering search may expand",
    )
    parser.add_argument(
        "--budget-iso-vertices",
        type=natural_int,
        default=defaults.budget_limits.get("iso_vertices"),
        help="Largest graph accepted by up-to-isomorphism recognition",
    )
    parser.add_argument(
        "--budget-seconds",
        type=positive_seconds,
        default=defaults.time_limit,
        help="Wall-clock limit for the command",
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        help="Logging verbosity (DEBUG, INFO, WARNING, ERROR, CRITICAL)",
    )


def budget_from_args(args: argparse.Namespace, defaults: Defaults) -> Budget:
    budget = Budget.from_defaults(defaults)
    overrides = {
        "sequences": args.budget_sequences,
        "orderings": args.budget_orderings,
        "iso_vertices": args.budget_iso_vertices,
    }
    budget.limits.update({name: value for name, value in overrides.items() if value is not None})
    budget.time_limit = args.budget_seconds
    return budget


def _read_text(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), "<stdin>"
    return Path(path).read_text(encoding="utf-8"), path


def read_sequence_arg(path: str) -> RainbowSequence:
    text, source = _read_text(path)
    return loads_sequence(text, source=source)


def read_graph_arg(path: str) -> Graph:
    text, source = _read_text(path)
    return loads_graph(text, source=source)


def render_json(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_text(lines: Iterable[str]) -> str:
    return "".join(f"{line}\n" for line in lines)


def render_kv(payload: Mapping[str, Any]) -> str:
    return render_text(f"{key}: {_scalar(value)}" for key, value in payload.items())


def render_csv(rows: Sequence[Mapping[str, Any]]) -> str:
    if not rows:
        return ""
    frame = pd.DataFrame([{key: _scalar(value) for key, value in row.items()} for row in rows])
    return frame.to_csv(index=False, lineterminator="\n")


def _scalar(value: Any) -> Any:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (list, tuple)):
        return " ".join(str(item) for item in value)
    if isinstance(value, Mapping):
        return json.dumps(value, sort_keys=True)
    return "" if value is None else value


def emit(document: str, args: argparse.Namespace) -> None:
    """Write ``document`` to ``--output`` or stdout; nothing else goes to stdout."""

    if getattr(args, "output", None):
        output_path = Path(args.output).expanduser()
        output_path.parent.mkdir(parents=True, exist_ok=True)
        output_path.write_text(document, encoding="utf-8")
        LOGGER.info("Wrote command output", extra={"path": str(output_path)})
        return
    sys.stdout.write(document)


__all__ = [
    "CommandInputError",
    "EXIT_OK",
    "EXIT_NEGATIVE",
    "EXIT_INVALID",
    "EXIT_BUDGET",
    "positive_int",
    "natural_int",
    "vertex_list",
    "add_common_arguments",
    "budget_from_args",
    "read_sequence_arg",
    "read_graph_arg",
    "render_json",
    "render_text",
    "render_kv",
    "render_csv",
    "emit",
]
