"""CLI helpers for ``rts build``, ``rts graph-info`` and ``rts enum``."""
from __future__ import annotations

import argparse

from rainbowthreshold.core_model import seq_to_graph
from rainbowthreshold.formats import dump_graph, graph_payload_hex, graph_to_json
from rainbowthreshold.isomorphism import canonical_form
from rainbowthreshold.logging_config import get_logger
from rainbowthreshold.recognition import enumerate_graphs, is_threshold_graph, min_ordered_rainbow_index

from ..config.loader import Defaults
from .common import (
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
    render_text,
)

LOGGER = get_logger(__name__)


def register_graph_parsers(subparsers: argparse._SubParsersAction, defaults: Defaults) -> None:
    build = subparsers.add_parser("build", help="Build the graph generated by an RTS sequence")
    build.add_argument("sequence", help="RTS v1 file (text or JSON); '-' reads stdin")
    add_common_arguments(build, defaults, default_format="text")
    build.set_defaults(handler=run_build_command)

    info = subparsers.add_parser("graph-info", help="Summarise an RTG graph")
    info.add_argument("graph", help="RTG v1 file (text or JSON); '-' reads stdin")
    add_common_arguments(info, defaults)
    info.set_defaults(handler=run_graph_info_command)

    enum = subparsers.add_parser("enum", help="Enumerate the k-rainbow threshold graphs on n vertices")
    enum.add_argument("--k", type=positive_int, required=True, help="Palette size")
    enum.add_argument("--n", type=natural_int, required=True, help="Number of vertices")
    enum.add_argument("--count-only", action="store_true", help="Report only the number of graphs")
    add_common_arguments(enum, defaults)
    enum.set_defaults(handler=run_enum_command)


def run_build_command(args: argparse.Namespace, defaults: Defaults) -> int:
    graph = seq_to_graph(read_sequence_arg(args.sequence))
    if args.format == "json":
        emit(render_json(graph_to_json(graph)), args)
    elif args.format == "csv":
        emit(render_csv([{"i": i, "j": j} for i, j in graph.edges()]) or "i,j\n", args)
    else:
        emit(dump_graph(graph), args)
    return EXIT_OK


def run_graph_info_command(args: argparse.Namespace, defaults: Defaults) -> int:
    graph = read_graph_arg(args.graph)
    budget = budget_from_args(args, defaults)
    payload = {
        "n": graph.n,
        "edges": graph.edge_count(),
        "degrees": graph.degrees(),
        "threshold": is_threshold_graph(graph),
        "min_ordered_index": min_ordered_rainbow_index(graph, budget),
        "payload_hex": graph_payload_hex(graph),
        "canonical_hex": canonical_form(graph, budget)[4:].hex(),
    }
    if args.format == "json":
        emit(render_json(payload), args)
    elif args.format == "csv":
        emit(render_csv([payload]), args)
    else:
        emit(render_kv(payload), args)
    return EXIT_OK


def run_enum_command(args: argparse.Namespace, defaults: Defaults) -> int:
    budget = budget_from_args(args, defaults)
    graphs = enumerate_graphs(args.k, args.n, budget)
    hexes = sorted(graph_payload_hex(graph) for graph in graphs)
    LOGGER.info("Enumerated graphs", extra={"k": args.k, "n": args.n, "count": len(hexes)})
    if args.format == "json":
        payload = {"k": args.k, "n": args.n, "count": len(hexes)}
        if not args.count_only:
            payload["graphs"] = hexes
        emit(render_json(payload), args)
    elif args.format == "csv":
        rows = [{"k": args.k, "n": args.n, "count": len(hexes)}] if args.count_only else [
            {"index": index, "payload_hex": value} for index, value in enumerate(hexes)
        ]
        emit(render_csv(rows), args)
    else:
        emit(render_text([f"count: {len(hexes)}", *([] if args.count_only else hexes)]), args)
    return EXIT_OK


__all__ = [
    "register_graph_parsers",
    "run_build_command",
    "run_graph_info_command",
    "run_enum_command",
]
