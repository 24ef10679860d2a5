"""Rainbow threshold CLI dispatcher for subcommands such as ``rts recognize``."""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Iterable

try:  # pragma: no cover - best effort optional dependency
    from dotenv import load_dotenv
except ImportError:  # pragma: no cover - ignore missing dependency
    load_dotenv = None

from rainbowthreshold.errors import (
    BudgetExceededError,
    ExperimentConfigError,
    HypothesisViolationError,
    ParseError,
    RainbowThresholdError,
)
from rainbowthreshold.logging_config import configure_logging, get_logger

from ..config.loader import ConfigurationError, Defaults, load_defaults
from .bounds import register_bounds_parsers
from .common import EXIT_BUDGET, EXIT_INVALID, CommandInputError
from .experiment import register_experiment_parser
from .graphs import register_graph_parsers
from .recognize import register_recognition_parsers

LOGGER = get_logger(__name__)

REPO_ROOT = Path(__file__).resolve().parents[2]


def _load_local_dotenv() -> None:
    if load_dotenv is None:
        return
    env_path = REPO_ROOT / ".env"
    if env_path.is_file():
        load_dotenv(dotenv_path=env_path, override=False)


def build_parser(defaults: Defaults | None = None) -> argparse.ArgumentParser:
    defaults = defaults or load_defaults()
    parser = argparse.ArgumentParser(prog="rts", description="k-rainbow threshold graph toolkit")
    subparsers = parser.add_subparsers(dest="command", required=True)
    register_graph_parsers(subparsers, defaults)
    register_recognition_parsers(subparsers, defaults)
    register_bounds_parsers(subparsers, defaults)
    register_experiment_parser(subparsers, defaults)
    return parser


def main(argv: Iterable[str] | None = None, *, defaults: Defaults | None = None) -> int:
    """Run one subcommand and return its exit code.

    0 success or member, 1 non-member or not good, 2 invalid input, 3 budget exceeded.
    """

    try:
        if defaults is None:
            _load_local_dotenv()
            defaults = load_defaults()
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    parser = build_parser(defaults)
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return int(exc.code or 0)

    configure_logging(getattr(args, "log_level", None))
    LOGGER.debug("Parsed arguments", extra={"command": args.command})

    try:
        return args.handler(args, defaults)
    except BudgetExceededError as exc:
        LOGGER.error("Budget exceeded", extra={"command": args.command, **exc.context})
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ParseError as exc:
        LOGGER.error("Input could not be parsed", extra={"command": args.command, "error": str(exc)})
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ExperimentConfigError, HypothesisViolationError, CommandInputError) as exc:
        LOGGER.error("Command rejected its input", extra={"command": args.command, "error": str(exc)})
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (RainbowThresholdError, ValueError) as exc:
        LOGGER.error("Invalid parameters", extra={"command": args.command, "error": str(exc)})
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        LOGGER.error("I/O failure", extra={"command": args.command, "error": str(exc)})
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":  # pragma: no cover - CLI entry point
    sys.exit(main())
