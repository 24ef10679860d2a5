"""Enumeration and recognition of k-rainbow threshold graphs.

Two earlier vertices with the same colour are treated identically by every later vertex,
so the colouring ``a`` of a sequence is a proper colouring of the *conflict graph*
(``i -- i'`` when some later vertex is adjacent to exactly one of them). Conversely any
proper colouring with ``k`` colours gives a witness sequence, which turns recognition on a
fixed vertex order into exact graph colouring.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Sequence

from .budget import Budget, resolve
from .core_model import Graph, RainbowSequence, iter_bits, symbol_count
from .equivalence import find_certificate
from .errors import BudgetExceededError
from .logging_config import get_logger

LOGGER = get_logger(__name__)

PrefixCheck = Callable[[Sequence[int], Sequence[int]], bool]


def enumerate_sequences(k: int, n: int, budget: Budget | None = None) -> Iterator[RainbowSequence]:
    """Every sequence of RainSeq_k(n) exactly once, in lexicographic entry-encoding order."""

    total = symbol_count(k) ** n
    resolve(budget).require("sequences", total)
    for codes in product(range(symbol_count(k)), repeat=n):
        yield RainbowSequence.from_codes(k, codes)


def _graph_from_lower(lower: Sequence[int]) -> Graph:
    n = len(lower)
    rows = list(lower)
    for j, earlier in enumerate(lower):
        for i in iter_bits(earlier):
            rows[i] |= 1 << j
    return Graph._trusted(n, rows)


def enumerate_graphs(k: int, n: int, budget: Budget | None = None) -> set[Graph]:
    """RainGraph_k(n): the image of RainSeq_k(n) under ``seq_to_graph``, deduplicated by equality.

    Sequences are explored vertex by vertex; a prefix is kept only as its lower-triangular
    adjacency together with its colours up to palette relabelling, since nothing else
    influences later edges.
    """

    budget = resolve(budget)
    if n == 0:
        return {Graph.empty(0)}
    if k <= 0:
        return set()
    layer: set[tuple[tuple[int, ...], tuple[int, ...]]] = {((), ())}
    graphs: set[tuple[int, ...]] = set()
    for j in range(n):
        last = j == n - 1
        following: set[tuple[tuple[int, ...], tuple[int, ...]]] = set()
        for lower, colors in layer:
            budget.charge("search_nodes")
            used = max(colors) + 1 if colors else 0
            members = [0] * used
            for i, color in enumerate(colors):
                members[color] |= 1 << i
            options = set()
            for subset in range(1 << used):
                row = 0
                for color in iter_bits(subset):
                    row |= members[color]
                options.add(row)
            if last:
                graphs.update(lower + (row,) for row in options)
                continue
            for color in range(min(used + 1, k)):
                for row in options:
                    following.add((lower + (row,), colors + (color,)))
        layer = following
    LOGGER.debug("Enumerated rainbow graphs", extra={"k": k, "n": n, "graphs": len(graphs)})
    return {_graph_from_lower(lower) for lower in graphs}


@dataclass(frozen=True)
class ConflictGraph:
    """``i -- i'`` iff some ``j > max(i, i')`` is adjacent to exactly one of them."""

    graph: Graph

    @property
    def n(self) -> int:
        return self.graph.n

    def edges(self) -> list[tuple[int, int]]:
        return self.graph.edges()


def conflict_graph(graph: Graph) -> ConflictGraph:
    rows = [0] * graph.n
    for later in range(graph.n):
        for earlier in range(later):
            if (graph.rows[earlier] ^ graph.rows[later]) >> (later + 1):
                rows[earlier] |= 1 << later
                rows[later] |= 1 << earlier
    return ConflictGraph(Graph._trusted(graph.n, rows))


def _greedy_clique(graph: Graph) -> int:
    best = 1 if graph.n else 0
    for start in range(graph.n):
        candidates = graph.rows[start]
        size = 1
        while candidates:
            pick = max(iter_bits(candidates), key=lambda v: (graph.rows[v] & candidates).bit_count())
            size += 1
            candidates &= graph.rows[pick]
        best = max(best, size)
    return best


def _dsatur_upper(graph: Graph) -> list[int]:
    coloring = [-1] * graph.n
    for _ in range(graph.n):
        vertex = max(
            (v for v in range(graph.n) if coloring[v] < 0),
            key=lambda v: (len({coloring[u] for u in iter_bits(graph.rows[v]) if coloring[u] >= 0}),
                           graph.rows[v].bit_count()),
        )
        taken = {coloring[u] for u in iter_bits(graph.rows[vertex])}
        color = 0
        while color in taken:
            color += 1
        coloring[vertex] = color
    return coloring


def find_k_coloring(graph: Graph, k: int, budget: Budget | None = None) -> list[int] | None:
    """Proper colouring with colours ``0..k-1`` or ``None``; exact DSATUR-ordered backtracking.

    New colours are opened in increasing order only, which removes palette symmetry.
    """

    budget = resolve(budget)
    n = graph.n
    if n == 0:
        return []
    if k <= 0:
        return None
    coloring = [-1] * n
    classes: list[int] = []
    rows = graph.rows

    def pick(uncolored: int) -> int:
        best_vertex = -1
        best_key = (-1, -1)
        for v in iter_bits(uncolored):
            saturation = sum(1 for members in classes if rows[v] & members)
            key = (saturation, (rows[v] & uncolored).bit_count())
            if key > best_key:
                best_key, best_vertex = key, v
        return best_vertex

    def search(uncolored: int) -> bool:
        if not uncolored:
            return True
        budget.charge("search_nodes")
        vertex = pick(uncolored)
        bit = 1 << vertex
        for color, members in enumerate(classes):
            if rows[vertex] & members:
                continue
            classes[color] = members | bit
            coloring[vertex] = color
            if search(uncolored & ~bit):
                return True
            classes[color] = members
        if len(classes) < k:
            classes.append(bit)
            coloring[vertex] = len(classes) - 1
            if search(uncolored & ~bit):
                return True
            classes.pop()
        coloring[vertex] = -1
        return False

    if search((1 << n) - 1):
        return coloring
    return None


def chromatic_number(graph: Graph, budget: Budget | None = None) -> int:
    if graph.n == 0:
        return 0
    upper = max(_dsatur_upper(graph)) + 1
    for k in range(_greedy_clique(graph), upper):
        if find_k_coloring(graph, k, budget) is not None:
            return k
    return upper


def _witness_from_coloring(graph: Graph, k: int, coloring: Sequence[int]) -> RainbowSequence:
    colorsets = []
    for j in range(graph.n):
        mask = 0
        for i in iter_bits(graph.rows[j] & ((1 << j) - 1)):
            mask |= 1 << coloring[i]
        colorsets.append(mask)
    return RainbowSequence(k, tuple(coloring), tuple(colorsets))


def is_ordered_k_rainbow(graph: Graph, k: int, budget: Budget | None = None) -> RainbowSequence | None:
    """Witness sequence over ``[k]`` generating ``graph`` on its natural order, or ``None``.

    Bits of colours never used before ``j`` are left out of ``e(j)``.
    """

    if graph.n == 0:
        return RainbowSequence(max(k, 0), (), ())
    if k < 1:
        return None
    coloring = find_k_coloring(conflict_graph(graph).graph, k, budget)
    if coloring is None:
        return None
    return _witness_from_coloring(graph, k, coloring)


def min_ordered_rainbow_index(graph: Graph, budget: Budget | None = None) -> int:
    """Least palette size ``k >= 1`` generating ``graph`` on its natural order (at most ``n``)."""

    return max(1, chromatic_number(conflict_graph(graph).graph, budget))


def iter_preimages(
    graph: Graph,
    k: int,
    budget: Budget | None = None,
    prefix_check: PrefixCheck | None = None,
) -> Iterator[RainbowSequence]:
    """Every sequence over ``[k]`` mapping to ``graph``, in lexicographic entry-encoding order.

    A plain prefix search over RainSeq_k(n) that only keeps entries consistent with the
    edges to earlier vertices. ``prefix_check(colors, colorsets)`` may reject a prefix early.
    """

    budget = resolve(budget)
    n = graph.n
    if k < 1:
        if n == 0:
            yield RainbowSequence(0, (), ())
        return
    lower = [row & ((1 << j) - 1) for j, row in enumerate(graph.rows)]
    colors: list[int] = []
    colorsets: list[int] = []
    members = [0] * k

    def extend(j: int) -> Iterator[RainbowSequence]:
        if j == n:
            yield RainbowSequence(k, tuple(colors), tuple(colorsets))
            return
        budget.charge("search_nodes")
        fitting = []
        for colorset in range(1 << k):
            row = 0
            for color in iter_bits(colorset):
                row |= members[color]
            if row == lower[j]:
                fitting.append(colorset)
        for color in range(k):
            for colorset in fitting:
                colors.append(color)
                colorsets.append(colorset)
                if prefix_check is None or prefix_check(colors, colorsets):
                    members[color] |= 1 << j
                    yield from extend(j + 1)
                    members[color] &= ~(1 << j)
                colors.pop()
                colorsets.pop()

    yield from extend(0)


def brute_force_ordered_k_rainbow(graph: Graph, k: int, budget: Budget | None = None) -> RainbowSequence | None:
    """Reference recogniser: first preimage found by direct search over sequences."""

    return next(iter_preimages(graph, k, budget), None)


def is_threshold_graph(graph: Graph) -> bool:
    """Order-free test: peel isolated or dominating vertices until nothing is left."""

    remaining = (1 << graph.n) - 1
    while remaining:
        size = remaining.bit_count()
        for vertex in iter_bits(remaining):
            degree = (graph.rows[vertex] & remaining).bit_count()
            if degree == 0 or degree == size - 1:
                remaining &= ~(1 << vertex)
                break
        else:
            return False
    return True


def find_rainbow_ordering(graph: Graph, k: int, budget: Budget | None = None) -> list[int] | None:
    """A vertex order making ``graph`` ordered-``k``-rainbow, or ``None``.

    The order is built from its last vertex backwards. Whether two placed vertices conflict
    depends only on vertices placed after them, so each colour class is summarised by the
    adjacency its earliest member shows towards the vertices placed behind it. States that
    failed once are remembered by (placed set, class summaries).
    """

    budget = resolve(budget)
    n = graph.n
    rows = graph.rows
    placed: list[int] = []
    failed: set[tuple[int, tuple[tuple[int, int], ...]]] = set()

    def search(placed_mask: int, classes: tuple[tuple[int, int], ...]) -> bool:
        if len(placed) == n:
            return True
        key = (placed_mask, tuple(sorted(classes)))
        if key in failed:
            return False
        budget.charge("orderings")
        unplaced = ((1 << n) - 1) & ~placed_mask
        for vertex in iter_bits(unplaced):
            seen_rows = rows[vertex] & placed_mask
            options = [
                index for index, (domain, pattern) in enumerate(classes) if rows[vertex] & domain == pattern
            ]
            if len(classes) < k:
                options.append(len(classes))
            for index in options:
                summary = (placed_mask, seen_rows)
                if index == len(classes):
                    following = classes + (summary,)
                else:
                    following = classes[:index] + (summary,) + classes[index + 1 :]
                placed.append(vertex)
                if search(placed_mask | (1 << vertex), following):
                    return True
                placed.pop()
        failed.add(key)
        return False

    if not search(0, ()):
        return None
    return placed[::-1]


def is_k_rainbow_up_to_iso(
    graph: Graph, k: int, budget: Budget | None = None, *, use_certificate: bool = True
) -> bool:
    """True iff some relabelling of ``graph`` lies in RainGraph_k(n)."""

    budget = resolve(budget)
    budget.require("iso_vertices", graph.n)
    if graph.n == 0 or k >= graph.n:
        return k >= 1 or graph.n == 0
    if k < 1:
        return False
    if is_ordered_k_rainbow(graph, k, budget) is not None:
        return True
    if k == 1:
        return is_threshold_graph(graph)
    if use_certificate and find_certificate(graph, k, max_size=3, budget=budget) is not None:
        return False
    order = find_rainbow_ordering(graph, k, budget)
    LOGGER.debug(
        "Ordering search finished",
        extra={"k": k, "n": graph.n, "member": order is not None, "nodes": budget.used.get("orderings", 0)},
    )
    return order is not None


def rainbow_witness_up_to_iso(
    graph: Graph, k: int, budget: Budget | None = None
) -> tuple[list[int], RainbowSequence] | None:
    """Vertex order and witness sequence for the relabelled graph, or ``None``."""

    budget = resolve(budget)
    budget.require("iso_vertices", graph.n)
    order = find_rainbow_ordering(graph, k, budget) if k >= 1 else None
    if order is None:
        return None
    witness = is_ordered_k_rainbow(graph.relabel(order), k, budget)
    if witness is None:  # pragma: no cover - the ordering search guarantees a colouring
        raise BudgetExceededError("ordering search and colouring disagree", context={"order": order})
    return order, witness


__all__ = [
    "ConflictGraph",
    "enumerate_sequences",
    "enumerate_graphs",
    "conflict_graph",
    "find_k_coloring",
    "chromatic_number",
    "is_ordered_k_rainbow",
    "min_ordered_rainbow_index",
    "iter_preimages",
    "brute_force_ordered_k_rainbow",
    "is_threshold_graph",
    "find_rainbow_ordering",
    "is_k_rainbow_up_to_iso",
    "rainbow_witness_up_to_iso",
]
