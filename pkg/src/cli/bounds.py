"""CLI helpers for ``rts good`` and ``rts bounds``."""
from __future__ import annotations

import argparse
from typing import Any

from rainbowthreshold.goodness import bound_report, is_ell_good_graph, is_ell_good_seq
from rainbowthreshold.logging_config import get_logger

from ..config.loader import Defaults
from .common import (
    CommandInputError,
    EXIT_NEGATIVE,
    EXIT_OK,
    add_common_arguments,
    budget_from_args,
    emit,
    natural_int,
    positive_int,
    read_graph_arg,
    read_sequence_arg,
    render_csv,
    render_json,
    render_kv,
)

LOGGER = get_logger(__name__)


def register_bounds_parsers(subparsers: argparse._SubParsersAction, defaults: Defaults) -> None:
    good = subparsers.add_parser("good", help="Check ℓ-goodness of a sequence or a graph")
    source = good.add_mutually_exclusive_group(required=True)
    source.add_argument("--sequence", help="RTS v1 file (text or JSON)")
    source.add_argument("--graph", help="RTG v1 file (text or JSON); requires --k")
    good.add_argument("--k", type=positive_int, help="Palette size for --graph")
    good.add_argument("--ell", type=positive_int, required=True, help="Window length")
    add_common_arguments(good, defaults)
    good.set_defaults(handler=run_good_command)

    bounds = subparsers.add_parser("bounds", help="Closed-form goodness bounds for (k, n, ℓ)")
    bounds.add_argument("--k", type=positive_int, required=True, help="Palette size")
    bounds.add_argument("--n", type=natural_int, required=True, help="Number of vertices")
    bounds.add_argument("--ell", type=positive_int, required=True, help="Window length")
    add_common_arguments(bounds, defaults)
    bounds.set_defaults(handler=run_bounds_command)


def run_good_command(args: argparse.Namespace, defaults: Defaults) -> int:
    if args.sequence:
        sequence = read_sequence_arg(args.sequence)
        good = is_ell_good_seq(sequence, args.ell)
        payload: dict[str, Any] = {"k": sequence.k, "n": sequence.n, "ell": args.ell, "good": good}
    else:
        if args.k is None:
            raise CommandInputError("--graph requires --k")
        graph = read_graph_arg(args.graph)
        good = is_ell_good_graph(graph, args.k, args.ell, budget_from_args(args, defaults))
        payload = {"k": args.k, "n": graph.n, "ell": args.ell, "good": good}
    if args.format == "json":
        emit(render_json(payload), args)
    elif args.format == "csv":
        emit(render_csv([payload]), args)
    else:
        emit(render_kv(payload), args)
    return EXIT_OK if good else EXIT_NEGATIVE


def run_bounds_command(args: argparse.Namespace, defaults: Defaults) -> int:
    report = bound_report(args.k, args.n, args.ell).to_dict()
    LOGGER.debug("Computed bounds", extra={"k": args.k, "n": args.n, "ell": args.ell})
    if args.format == "json":
        emit(render_json(report), args)
        return EXIT_OK
    flat = _flatten(report)
    if args.format == "csv":
        emit(render_csv([flat]), args)
    else:
        emit(render_kv(flat), args)
    return EXIT_OK


def _flatten(payload: dict[str, Any]) -> dict[str, Any]:
    flat: dict[str, Any] = {}
    for key, value in payload.items():
        if isinstance(value, dict) and "decimal" in value:
            flat[key] = value["decimal"]
        elif isinstance(value, dict):
            flat.update({f"{key}.{inner}": item for inner, item in value.items()})
        else:
            flat[key] = value
    return flat


__all__ = ["register_bounds_parsers", "run_good_command", "run_bounds_command"]
