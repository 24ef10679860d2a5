"""CLI helpers for the ``rts experiment`` command."""
from __future__ import annotations

import argparse
import json
from pathlib import Path
from typing import Any

from rainbowthreshold.errors import ExperimentConfigError
from rainbowthreshold.experiments import EXPERIMENTS, reports_to_json, run_report
from rainbowthreshold.logging_config import get_logger

from ..config.loader import Defaults
from ..export.exporter import export_reports
from .common import (
    EXIT_OK,
    add_common_arguments,
    budget_from_args,
    emit,
    natural_int,
    positive_int,
    render_csv,
    render_json,
    render_text,
)

LOGGER = get_logger(__name__)


def register_experiment_parser(subparsers: argparse._SubParsersAction, defaults: Defaults) -> None:
    parser = subparsers.add_parser("experiment", help="Run exact and Monte Carlo experiments")
    parser.add_argument(
        "config",
        nargs="?",
        help="JSON config: one entry, a list of entries, or {\"experiments\": [...]}",
    )
    parser.add_argument("--name", choices=sorted(EXPERIMENTS), help="Run a single experiment instead of a config file")
    parser.add_argument("--k", type=positive_int, help="Palette size")
    parser.add_argument("--n", type=natural_int, help="Number of vertices")
    parser.add_argument("--ell", type=positive_int, help="Window length")
    parser.add_argument("--trials", type=positive_int, help="Monte Carlo trials")
    parser.add_argument("--seed", type=natural_int, default=defaults.seed, help="Seed for Monte Carlo experiments")
    parser.add_argument(
        "--export-dir",
        help=f"Also write reports.json/csv/xlsx into this directory (configured default: {defaults.output_dir})",
    )
    parser.add_argument(
        "--export-formats",
        default=",".join(defaults.export_formats),
        help="Comma-separated export formats: json, csv, excel",
    )
    parser.add_argument("--timing", action="store_true", help="Include wall times in the output")
    add_common_arguments(parser, defaults)
    parser.set_defaults(handler=run_experiment_command)


def _load_config(args: argparse.Namespace) -> Any:
    if args.config and args.name:
        raise ExperimentConfigError("pass either a config file or --name, not both")
    if args.config:
        path = Path(args.config)
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ExperimentConfigError(
                f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}", context={"path": str(path)}
            ) from exc
    if not args.name:
        raise ExperimentConfigError("a config file or --name is required")
    entry: dict[str, Any] = {"experiment": args.name}
    for key in ("k", "n", "ell", "trials"):
        value = getattr(args, key)
        if value is not None:
            entry[key] = value
    return entry


def run_experiment_command(args: argparse.Namespace, defaults: Defaults) -> int:
    config = _load_config(args)
    budget = budget_from_args(args, defaults)
    reports = run_report(config, budget.spawn, default_seed=args.seed)
    documents = reports_to_json(reports, include_timing=args.timing)

    if args.export_dir:
        formats = [fmt for fmt in args.export_formats.split(",") if fmt.strip()]
        outputs = export_reports(reports, out_dir=args.export_dir, formats=formats, include_timing=args.timing)
        LOGGER.info("Exported reports", extra={"paths": {name: str(path) for name, path in outputs.items()}})

    if args.format == "json":
        emit(render_json(documents), args)
    elif args.format == "csv":
        rows = [report.to_row() for report in reports]
        emit(render_csv(rows), args)
    else:
        emit(
            render_text(
                f"{report.experiment} k={report.parameters.get('k')} n={report.parameters.get('n')}"
                f" ell={report.parameters.get('ell')} passed={str(report.passed).lower()}"
                for report in reports
            ),
            args,
        )
    return EXIT_OK


__all__ = ["register_experiment_parser", "run_experiment_command"]
