"""Canonical labelling by individualisation and refinement.

The canonical form is the least RTG bit payload over every leaf of the search tree,
prefixed with ``n`` as four big-endian bytes, so two graphs are isomorphic exactly when
their forms are equal.
"""
from __future__ import annotations

from itertools import permutations

from .budget import Budget, resolve
from .core_model import Graph
from .formats import graph_payload_bytes
from .logging_config import get_logger

LOGGER = get_logger(__name__)

Cells = list[list[int]]


def _refine(graph: Graph, cells: Cells) -> Cells:
    """Coarsest equitable refinement; new cells are ordered by (old cell, neighbour counts)."""

    rows = graph.rows
    while True:
        masks = [sum(1 << v for v in cell) for cell in cells]
        keyed = []
        for index, cell in enumerate(cells):
            for v in cell:
                keyed.append(((index, tuple((rows[v] & mask).bit_count() for mask in masks)), v))
        keyed.sort()
        refined: Cells = []
        previous = None
        for key, v in keyed:
            if key != previous:
                refined.append([])
                previous = key
            refined[-1].append(v)
        if len(refined) == len(cells):
            return refined
        cells = refined


def _twins(graph: Graph, u: int, v: int) -> bool:
    both = (1 << u) | (1 << v)
    return graph.rows[u] & ~both == graph.rows[v] & ~both


def canonical_labeling(graph: Graph, budget: Budget | None = None) -> list[int]:
    """Vertex order whose relabelled graph has the least RTG payload over the search tree."""

    budget = resolve(budget)
    if graph.n == 0:
        return []
    best: tuple[bytes, list[int]] | None = None

    def search(cells: Cells) -> None:
        nonlocal best
        cells = _refine(graph, cells)
        target = next((index for index, cell in enumerate(cells) if len(cell) > 1), None)
        if target is None:
            budget.charge("canonical_leaves")
            order = [cell[0] for cell in cells]
            payload = graph_payload_bytes(graph.relabel(order))
            if best is None or payload < best[0]:
                best = (payload, order)
            return
        cell = cells[target]
        tried: list[int] = []
        for v in cell:
            # swapping twins is an automorphism that fixes the partition
            if any(_twins(graph, u, v) for u in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:target] + [[v], rest] + cells[target + 1 :])

    search([list(range(graph.n))])
    assert best is not None
    LOGGER.debug("Canonical labelling", extra={"n": graph.n, "leaves": budget.used.get("canonical_leaves", 0)})
    return best[1]


def canonical_graph(graph: Graph, budget: Budget | None = None) -> Graph:
    return graph.relabel(canonical_labeling(graph, budget))


def canonical_form(graph: Graph, budget: Budget | None = None) -> bytes:
    return graph.n.to_bytes(4, "big") + graph_payload_bytes(canonical_graph(graph, budget))


def are_isomorphic(first: Graph, second: Graph, budget: Budget | None = None) -> bool:
    if first.n != second.n or first.edge_count() != second.edge_count():
        return False
    if sorted(first.degrees()) != sorted(second.degrees()):
        return False
    return canonical_form(first, budget) == canonical_form(second, budget)


def brute_force_isomorphic(first: Graph, second: Graph) -> bool:
    """Reference check over all ``n!`` bijections."""

    if first.n != second.n or first.edge_count() != second.edge_count():
        return False
    return any(first.relabel(order) == second for order in permutations(range(first.n)))


__all__ = [
    "canonical_labeling",
    "canonical_form",
    "canonical_graph",
    "are_isomorphic",
    "brute_force_isomorphic",
]
