"""Neighbourhood equivalence, order equivalence and the class-count bound.

For a ``k``-rainbow threshold graph the vertices outside ``X`` fall into at most
``k * 2**k * (1 + |X| / 2)`` classes of identical adjacency to ``X``. Exceeding that count
for any ``X`` proves the graph is isomorphic to no ``k``-rainbow threshold graph, because
the count depends on the graph alone and not on the vertex order.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable

from .budget import Budget
from .core_model import Graph, normalize_subset, subset_mask
from .errors import InvalidGraphError, InvalidSequenceError
from .logging_config import get_logger

LOGGER = get_logger(__name__)


@dataclass(frozen=True)
class Partition:
    """Blocks of an equivalence relation on ``domain``, each sorted, ordered by least member."""

    domain: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        ordered = sorted(tuple(sorted(block)) for block in blocks)
        domain = tuple(sorted(v for block in ordered for v in block))
        if any(not block for block in ordered) or len(set(domain)) != len(domain):
            raise ValueError("blocks must be nonempty and pairwise disjoint")
        return cls(domain, tuple(ordered))

    def block_index(self) -> dict[int, int]:
        return {vertex: index for index, block in enumerate(self.blocks) for vertex in block}

    def same_block(self, i: int, j: int) -> bool:
        index = self.block_index()
        return index[i] == index[j]

    def to_json(self) -> list[list[int]]:
        return [list(block) for block in self.blocks]


def _subsets(graph: Graph, *subsets: Iterable[int]) -> list[tuple[int, ...]]:
    try:
        return [normalize_subset(subset, graph.n) for subset in subsets]
    except InvalidSequenceError as exc:
        raise InvalidGraphError(str(exc), context=exc.context) from exc


def neighborhood_partition(graph: Graph, domain: Iterable[int], cut: Iterable[int]) -> Partition:
    """Partition of ``domain``: cut vertices are singletons, the rest group by adjacency to ``cut``."""

    domain_vertices, cut_vertices = _subsets(graph, domain, cut)
    cut_mask = subset_mask(cut_vertices)
    singles: list[tuple[int, ...]] = []
    groups: dict[int, list[int]] = {}
    for vertex in domain_vertices:
        if (cut_mask >> vertex) & 1:
            singles.append((vertex,))
        else:
            groups.setdefault(graph.rows[vertex] & cut_mask, []).append(vertex)
    blocks = sorted([*singles, *(tuple(group) for group in groups.values())])
    return Partition(domain_vertices, tuple(blocks))


def order_partition(n: int, cut: Iterable[int]) -> Partition:
    """Partition of ``[n]``: cut vertices are singletons, the rest group by the gap they sit in."""

    cut_vertices = normalize_subset(cut, n)
    cut_set = set(cut_vertices)
    groups: dict[int, list[int]] = {}
    singles: list[tuple[int, ...]] = []
    for vertex in range(n):
        if vertex in cut_set:
            singles.append((vertex,))
        else:
            groups.setdefault(bisect_left(cut_vertices, vertex), []).append(vertex)
    blocks = sorted([*singles, *(tuple(group) for group in groups.values())])
    return Partition(tuple(range(n)), tuple(blocks))


def count_classes(partition: Partition) -> int:
    return len(partition.blocks)


def class_bound(k: int, t: int) -> Fraction:
    """``k * 2**k * (1 + t/2)`` as an exact rational."""

    return Fraction(k << k) * (1 + Fraction(t, 2))


def outside_class_count(graph: Graph, cut: Iterable[int]) -> int:
    """Classes of the neighbourhood relation on ``[n] \\ cut`` relative to ``cut``."""

    cut_mask = subset_mask(_subsets(graph, cut)[0])
    return len({row & cut_mask for vertex, row in enumerate(graph.rows) if not (cut_mask >> vertex) & 1})


def certify_not_k_rainbow(graph: Graph, cut: Iterable[int], k: int) -> bool:
    cut_vertices = _subsets(graph, cut)[0]
    return outside_class_count(graph, cut_vertices) > class_bound(k, len(cut_vertices))


def max_class_count(graph: Graph, size: int, budget: Budget | None = None) -> int:
    """Largest outside class count over every cut of ``size`` vertices (an isomorphism invariant)."""

    best = 0
    for cut in combinations(range(graph.n), size):
        if budget is not None:
            budget.charge("search_nodes")
        best = max(best, outside_class_count(graph, cut))
    return best


def find_certificate(
    graph: Graph, k: int, max_size: int | None = None, budget: Budget | None = None
) -> tuple[int, ...] | None:
    """Smallest cut (then lexicographically least) whose class count beats the ``k`` bound."""

    limit = graph.n if max_size is None else min(max_size, graph.n)
    for size in range(limit + 1):
        bound = class_bound(k, size)
        # outside vertices cap the class count; the cap shrinks while the bound grows
        if graph.n - size <= bound:
            break
        for cut in combinations(range(graph.n), size):
            if budget is not None:
                budget.charge("search_nodes")
            if outside_class_count(graph, cut) > bound:
                LOGGER.debug("Found class-count certificate", extra={"k": k, "cut": list(cut)})
                return cut
    return None


def partition_to_json(partition: Partition) -> dict[str, Any]:
    return {"domain": list(partition.domain), "blocks": partition.to_json(), "classes": count_classes(partition)}


__all__ = [
    "Partition",
    "neighborhood_partition",
    "order_partition",
    "count_classes",
    "class_bound",
    "outside_class_count",
    "certify_not_k_rainbow",
    "max_class_count",
    "find_certificate",
    "partition_to_json",
]
