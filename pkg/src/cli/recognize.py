"""CLI helpers for ``rts recognize``, ``rts min-index``, ``rts neighborhood`` and ``rts witness``."""
from __future__ import annotations

import argparse
from typing import Any

from rainbowthreshold.core_model import RainbowSequence, canonicalize_sequence
from rainbowthreshold.equivalence import class_bound, neighborhood_partition, partition_to_json
from rainbowthreshold.formats import dump_sequence, sequence_to_json
from rainbowthreshold.goodness import fraction_to_json
from rainbowthreshold.logging_config import get_logger
from rainbowthreshold.recognition import (
    is_k_rainbow_up_to_iso,
    is_ordered_k_rainbow,
    min_ordered_rainbow_index,
    rainbow_witness_up_to_iso,
)
from rainbowthreshold.witness import build_witness_set, cycling_sequence

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
    render_text,
    vertex_list,
)

LOGGER = get_logger(__name__)


def register_recognition_parsers(subparsers: argparse._SubParsersAction, defaults: Defaults) -> None:
    recognize = subparsers.add_parser("recognize", help="Decide membership in RainGraph_k(n)")
    recognize.add_argument("graph", help="RTG v1 file (text or JSON); '-' reads stdin")
    recognize.add_argument("--k", type=positive_int, required=True, help="Palette size")
    recognize.add_argument(
        "--up-to-iso",
        action="store_true",
        help="Accept any relabelling of the graph instead of its given vertex order",
    )
    add_common_arguments(recognize, defaults)
    recognize.set_defaults(handler=run_recognize_command)

    min_index = subparsers.add_parser("min-index", help="Least palette generating the graph on its vertex order")
    min_index.add_argument("graph", help="RTG v1 file (text or JSON); '-' reads stdin")
    add_common_arguments(min_index, defaults)
    min_index.set_defaults(handler=run_min_index_command)

    neighborhood = subparsers.add_parser("neighborhood", help="Adjacency classes relative to a cut set")
    neighborhood.add_argument("graph", help="RTG v1 file (text or JSON); '-' reads stdin")
    neighborhood.add_argument("--cut", type=vertex_list, required=True, help="Cut vertices, e.g. 0,1,2")
    neighborhood.add_argument("--domain", type=vertex_list, help="Vertices to partition (default: all)")
    neighborhood.add_argument("--k", type=positive_int, help="Compare the outside class count to the k bound")
    add_common_arguments(neighborhood, defaults)
    neighborhood.set_defaults(handler=run_neighborhood_command)

    witness = subparsers.add_parser(
        "witness", help="Cut set proving an ℓ-good (k+1)-colour graph is isomorphic to no k-colour graph"
    )
    witness.add_argument("--k", type=positive_int, required=True, help="Smaller palette size")
    witness.add_argument("--ell", type=positive_int, required=True, help="Window length")
    witness.add_argument("--n", type=natural_int, help="Length of the generated cycling sequence")
    witness.add_argument("--sequence", help="RTS v1 file over k+1 colours instead of the cycling sequence")
    add_common_arguments(witness, defaults)
    witness.set_defaults(handler=run_witness_command)


def _witness_payload(sequence: RainbowSequence) -> dict[str, Any]:
    canonical = canonicalize_sequence(sequence)
    return {"witness": sequence_to_json(canonical)}


def _emit_membership(payload: dict[str, Any], witness: RainbowSequence | None, args: argparse.Namespace) -> None:
    if args.format == "json":
        emit(render_json(payload), args)
    elif args.format == "csv":
        emit(render_csv([{key: value for key, value in payload.items() if key != "witness"}]), args)
    elif witness is not None:
        emit(dump_sequence(canonicalize_sequence(witness)), args)
    else:
        emit(render_text([f"member: {str(payload['member']).lower()}"]), args)


def run_recognize_command(args: argparse.Namespace, defaults: Defaults) -> int:
    graph = read_graph_arg(args.graph)
    budget = budget_from_args(args, defaults)
    witness: RainbowSequence | None = None
    payload: dict[str, Any] = {"k": args.k, "n": graph.n, "up_to_iso": args.up_to_iso}
    if args.up_to_iso:
        member = is_k_rainbow_up_to_iso(graph, args.k, budget)
        if member:
            found = rainbow_witness_up_to_iso(graph, args.k, budget)
            if found is not None:
                order, witness = found
                payload["order"] = order
    else:
        witness = is_ordered_k_rainbow(graph, args.k, budget)
        member = witness is not None
    payload["member"] = member
    if witness is not None:
        payload.update(_witness_payload(witness))
    if not args.up_to_iso:
        payload["min_index"] = min_ordered_rainbow_index(graph, budget)
    LOGGER.info("Recognition finished", extra={"k": args.k, "n": graph.n, "member": member})
    _emit_membership(payload, witness, args)
    return EXIT_OK if member else EXIT_NEGATIVE


def run_min_index_command(args: argparse.Namespace, defaults: Defaults) -> int:
    graph = read_graph_arg(args.graph)
    budget = budget_from_args(args, defaults)
    index = min_ordered_rainbow_index(graph, budget)
    witness = is_ordered_k_rainbow(graph, index, budget)
    payload: dict[str, Any] = {"n": graph.n, "min_index": index, "member": True}
    if witness is not None:
        payload.update(_witness_payload(witness))
    if args.format == "text":
        emit(render_text([f"min_index: {index}"]), args)
    else:
        _emit_membership(payload, witness, args)
    return EXIT_OK


def run_neighborhood_command(args: argparse.Namespace, defaults: Defaults) -> int:
    graph = read_graph_arg(args.graph)
    domain = args.domain if args.domain is not None else tuple(range(graph.n))
    partition = neighborhood_partition(graph, domain, args.cut)
    cut = set(args.cut)
    outside = sum(1 for block in partition.blocks if not (len(block) == 1 and block[0] in cut))
    payload: dict[str, Any] = partition_to_json(partition)
    payload.update({"cut": sorted(cut), "outside_classes": outside})
    if args.k is not None:
        bound = class_bound(args.k, len(cut))
        payload["class_bound"] = fraction_to_json(bound)
        payload["certified"] = outside > bound
    if args.format == "json":
        emit(render_json(payload), args)
    elif args.format == "csv":
        emit(render_csv([{"block": index, "vertices": list(block)} for index, block in enumerate(partition.blocks)]), args)
    else:
        summary = {key: value for key, value in payload.items() if key != "blocks"}
        summary["blocks"] = " | ".join(",".join(str(v) for v in block) for block in partition.blocks)
        if "class_bound" in summary:
            summary["class_bound"] = summary["class_bound"]["decimal"]
        emit(render_kv(summary), args)
    return EXIT_OK


def run_witness_command(args: argparse.Namespace, defaults: Defaults) -> int:
    if args.sequence:
        sequence = read_sequence_arg(args.sequence)
        if sequence.k != args.k + 1:
            raise CommandInputError(f"sequence must use k+1 = {args.k + 1} colours, found {sequence.k}")
    else:
        if args.n is None:
            raise CommandInputError("either --sequence or --n is required")
        sequence = cycling_sequence(args.k + 1, args.n)
    witness = build_witness_set(sequence, args.ell)
    payload = witness.to_dict() | {"n": sequence.n}
    if args.format == "json":
        emit(render_json(payload), args)
    elif args.format == "csv":
        emit(render_csv([{key: value for key, value in payload.items() if key != "class_bound"}]), args)
    else:
        summary = dict(payload)
        summary["class_bound"] = payload["class_bound"]["decimal"]
        emit(render_kv(summary), args)
    return EXIT_OK


__all__ = [
    "register_recognition_parsers",
    "run_recognize_command",
    "run_min_index_command",
    "run_neighborhood_command",
    "run_witness_command",
]
