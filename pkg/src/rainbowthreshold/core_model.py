"""Rainbow sequences, the sequence-to-graph construction and their structural predicates.

Vertices are always ``0..n-1`` in their natural order. A colourset is a ``k``-bit mask and
an entry ``(a, e)`` is encoded as the integer ``a * 2**k + e`` whenever entries need a
total order (enumeration, canonical forms).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import InvalidGraphError, InvalidSequenceError


class ColorSymbol(NamedTuple):
    """One of the ``k * 2**k`` values a single position of a sequence can take."""

    color: int
    colorset: int

    def encode(self, k: int) -> int:
        return (self.color << k) | self.colorset

    @classmethod
    def decode(cls, code: int, k: int) -> "ColorSymbol":
        return cls(code >> k, code & ((1 << k) - 1))


def symbol_count(k: int) -> int:
    return k << k


def all_symbols(k: int) -> list[ColorSymbol]:
    """Every symbol of ``[k] x P([k])`` in encoding order."""

    return [ColorSymbol.decode(code, k) for code in range(symbol_count(k))]


def mask_to_colors(mask: int) -> list[int]:
    colors = []
    color = 0
    while mask:
        if mask & 1:
            colors.append(color)
        mask >>= 1
        color += 1
    return colors


def colors_to_mask(colors: Iterable[int]) -> int:
    mask = 0
    for color in colors:
        mask |= 1 << color
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class RainbowSequence:
    """Per-vertex ``(colour, colourset)`` pairs over the palette ``[k]``."""

    k: int
    colors: tuple[int, ...]
    colorsets: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "colors", tuple(int(value) for value in self.colors))
        object.__setattr__(self, "colorsets", tuple(int(value) for value in self.colorsets))
        if len(self.colors) != len(self.colorsets):
            raise InvalidSequenceError(
                "colors and colorsets must have the same length",
                context={"colors": len(self.colors), "colorsets": len(self.colorsets)},
            )
        if self.k < 0 or (self.k == 0 and self.colors):
            raise InvalidSequenceError(
                "palette must be nonempty for a nonempty sequence",
                context={"k": self.k, "n": len(self.colors)},
            )
        limit = 1 << self.k
        for index, (color, colorset) in enumerate(zip(self.colors, self.colorsets)):
            if not 0 <= color < self.k:
                raise InvalidSequenceError(
                    f"color {color} at position {index} is outside [{self.k}]",
                    context={"position": index, "color": color, "k": self.k},
                )
            if not 0 <= colorset < limit:
                raise InvalidSequenceError(
                    f"colorset at position {index} uses colors outside [{self.k}]",
                    context={"position": index, "colorset": colorset, "k": self.k},
                )

    @classmethod
    def from_entries(cls, k: int, entries: Iterable[tuple[int, Iterable[int] | int]]) -> "RainbowSequence":
        """Build from ``(colour, colourset)`` pairs; a colourset may be a mask or an iterable."""

        colors: list[int] = []
        colorsets: list[int] = []
        for color, colorset in entries:
            colors.append(color)
            colorsets.append(colorset if isinstance(colorset, int) else colors_to_mask(colorset))
        return cls(k, tuple(colors), tuple(colorsets))

    @classmethod
    def from_codes(cls, k: int, codes: Iterable[int]) -> "RainbowSequence":
        low = (1 << k) - 1
        codes = tuple(codes)
        return cls(k, tuple(code >> k for code in codes), tuple(code & low for code in codes))

    @property
    def n(self) -> int:
        return len(self.colors)

    def __len__(self) -> int:
        return len(self.colors)

    def symbol(self, index: int) -> ColorSymbol:
        return ColorSymbol(self.colors[index], self.colorsets[index])

    def symbols(self) -> list[ColorSymbol]:
        return [ColorSymbol(a, e) for a, e in zip(self.colors, self.colorsets)]

    def codes(self) -> tuple[int, ...]:
        k = self.k
        return tuple((a << k) | e for a, e in zip(self.colors, self.colorsets))


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph on ``0..n-1``; ``rows[i]`` is the neighbour bitmask of ``i``."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rows", tuple(int(row) for row in self.rows))
        if self.n < 0 or len(self.rows) != self.n:
            raise InvalidGraphError(
                "row count does not match vertex count",
                context={"n": self.n, "rows": len(self.rows)},
            )
        full = (1 << self.n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full or row < 0:
                raise InvalidGraphError(f"row {i} references vertices outside [{self.n}]", context={"vertex": i})
            if (row >> i) & 1:
                raise InvalidGraphError(f"vertex {i} has a loop", context={"vertex": i})
            for j in iter_bits(row):
                if not (self.rows[j] >> i) & 1:
                    raise InvalidGraphError(
                        f"adjacency is not symmetric at ({i}, {j})", context={"edge": [i, j]}
                    )

    @classmethod
    def _trusted(cls, n: int, rows: Sequence[int]) -> "Graph":
        """Construct without validation; callers guarantee symmetry and an empty diagonal."""

        graph = object.__new__(cls)
        object.__setattr__(graph, "n", n)
        object.__setattr__(graph, "rows", tuple(rows))
        return graph

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls._trusted(n, [0] * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls._trusted(n, [full ^ (1 << i) for i in range(n)])

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise InvalidGraphError(f"edge ({i}, {j}) is outside [{n}]", context={"edge": [i, j]})
            if i == j:
                raise InvalidGraphError(f"vertex {i} has a loop", context={"vertex": i})
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls._trusted(n, rows)

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def neighbors(self, i: int) -> list[int]:
        return list(iter_bits(self.rows[i]))

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for j in range(self.n) for i in iter_bits(self.rows[j] & ((1 << j) - 1))]

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.rows) // 2

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.rows]

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex ``p`` is ``order[p]`` of this graph (``order`` may be a subset)."""

        position = {vertex: index for index, vertex in enumerate(order)}
        rows = []
        for vertex in order:
            row = 0
            for neighbour in iter_bits(self.rows[vertex]):
                index = position.get(neighbour)
                if index is not None:
                    row |= 1 << index
            rows.append(row)
        return Graph._trusted(len(order), rows)


def normalize_subset(subset: Iterable[int], n: int) -> tuple[int, ...]:
    """Sorted, duplicate-free vertex subset of ``[n]``; raises on out-of-range members."""

    values = sorted(set(int(value) for value in subset))
    if values and (values[0] < 0 or values[-1] >= n):
        bad = values[0] if values[0] < 0 else values[-1]
        raise InvalidSequenceError(f"vertex {bad} is out of range for n={n}", context={"vertex": bad, "n": n})
    return tuple(values)


def subset_mask(subset: Iterable[int]) -> int:
    mask = 0
    for vertex in subset:
        mask |= 1 << vertex
    return mask


def seq_to_graph(sequence: RainbowSequence) -> Graph:
    """Edge ``{i, j}`` with ``i < j`` iff ``a(i)`` is in ``e(j)``."""

    n = sequence.n
    rows = [0] * n
    members = [0] * sequence.k
    for j, (color, colorset) in enumerate(zip(sequence.colors, sequence.colorsets)):
        earlier = 0
        for c in iter_bits(colorset):
            earlier |= members[c]
        rows[j] = earlier
        bit = 1 << j
        for i in iter_bits(earlier):
            rows[i] |= bit
        members[color] |= bit
    return Graph._trusted(n, rows)


def restrict_sequence(sequence: RainbowSequence, subset: Iterable[int]) -> RainbowSequence:
    positions = normalize_subset(subset, sequence.n)
    return RainbowSequence(
        sequence.k,
        tuple(sequence.colors[p] for p in positions),
        tuple(sequence.colorsets[p] for p in positions),
    )


def induced_subgraph(graph: Graph, subset: Iterable[int]) -> Graph:
    try:
        positions = normalize_subset(subset, graph.n)
    except InvalidSequenceError as exc:
        raise InvalidGraphError(str(exc), context=exc.context) from exc
    return graph.relabel(positions)


def permute_sequence(sequence: RainbowSequence, tau: Sequence[int]) -> RainbowSequence:
    """Relabel colours by ``tau`` (``tau[c]`` is the new name of colour ``c``)."""

    if sorted(tau) != list(range(sequence.k)):
        raise InvalidSequenceError("tau must be a permutation of the palette", context={"tau": list(tau)})
    colorsets = []
    for colorset in sequence.colorsets:
        mask = 0
        for c in iter_bits(colorset):
            mask |= 1 << tau[c]
        colorsets.append(mask)
    return RainbowSequence(sequence.k, tuple(tau[a] for a in sequence.colors), tuple(colorsets))


def _canonical_palette(sequence: RainbowSequence) -> list[int]:
    # Ordered partition of the palette; block order fixes the target range of its colours.
    # At every position the colour moves to the front of its block and each block puts the
    # colours of e(i) before the others, which is exactly the set of palette permutations
    # minimising the entry code at that position.
    blocks: list[list[int]] = [list(range(sequence.k))] if sequence.k else []
    for color, colorset in zip(sequence.colors, sequence.colorsets):
        refined: list[list[int]] = []
        for block in blocks:
            if len(block) == 1:
                refined.append(block)
                continue
            if color in block:
                refined.append([color])
                block = [c for c in block if c != color]
            inside = [c for c in block if (colorset >> c) & 1]
            outside = [c for c in block if not (colorset >> c) & 1]
            refined.extend(part for part in (inside, outside) if part)
        blocks = refined
    tau = [0] * sequence.k
    target = 0
    for block in blocks:
        for color in block:
            tau[color] = target
            target += 1
    return tau


def canonicalize_sequence(sequence: RainbowSequence) -> RainbowSequence:
    """Lexicographically least sequence similar to ``sequence`` under the entry encoding."""

    return permute_sequence(sequence, _canonical_palette(sequence))


def sequences_similar(first: RainbowSequence, second: RainbowSequence) -> bool:
    if first.k != second.k or first.n != second.n:
        raise InvalidSequenceError(
            "similarity needs sequences with the same palette and length",
            context={"k": [first.k, second.k], "n": [first.n, second.n]},
        )
    return canonicalize_sequence(first) == canonicalize_sequence(second)


def brute_force_similar(first: RainbowSequence, second: RainbowSequence) -> bool:
    """Similarity by trying every palette permutation; reference for small ``k``."""

    if first.k != second.k or first.n != second.n:
        raise InvalidSequenceError("similarity needs sequences with the same palette and length")
    return any(permute_sequence(second, tau) == first for tau in permutations(range(first.k)))


def embed_as_full_rainbow(graph: Graph) -> RainbowSequence:
    """Sequence over ``k = n`` colours with ``a`` the identity and ``e(i)`` the earlier neighbours."""

    return RainbowSequence(
        graph.n,
        tuple(range(graph.n)),
        tuple(row & ((1 << i) - 1) for i, row in enumerate(graph.rows)),
    )


def widen_palette(sequence: RainbowSequence, ell: int) -> RainbowSequence:
    if ell < sequence.k:
        raise InvalidSequenceError(
            f"cannot widen a {sequence.k}-colour palette to {ell} colours",
            context={"k": sequence.k, "ell": ell},
        )
    return RainbowSequence(ell, sequence.colors, sequence.colorsets)


def has_all_colors(sequence: RainbowSequence, subset: Iterable[int]) -> bool:
    seen = {sequence.colors[x] for x in normalize_subset(subset, sequence.n)}
    return len(seen) == sequence.k


def separates_all_colors(sequence: RainbowSequence, subset: Iterable[int]) -> bool:
    positions = normalize_subset(subset, sequence.n)
    if not positions:
        return False
    full = (1 << sequence.k) - 1
    union = 0
    common = full
    for x in positions:
        union |= sequence.colorsets[x]
        common &= sequence.colorsets[x]
    return union == full and common == 0


def distinguishes_all_colors(sequence: RainbowSequence, subset: Iterable[int]) -> bool:
    """Every pair of distinct colours is split by the colourset of some ``x`` in ``subset``."""

    positions = normalize_subset(subset, sequence.n)
    signatures = {
        tuple((sequence.colorsets[x] >> c) & 1 for x in positions) for c in range(sequence.k)
    }
    return len(signatures) == sequence.k


def threshold_sequence(bits: Sequence[int]) -> RainbowSequence:
    """1-colour sequence of a threshold graph: bit ``1`` makes the vertex dominate its predecessors."""

    return RainbowSequence(1, (0,) * len(bits), tuple(1 if bit else 0 for bit in bits))


def threshold_bigraph_sequence(parts: Sequence[int], alpha: Sequence[int]) -> RainbowSequence:
    """2-colour sequence of a threshold bigraph.

    ``parts[x]`` names the side of ``x``; ``alpha[x] == 1`` joins ``x`` to every earlier
    vertex of the other side.
    """

    if len(parts) != len(alpha):
        raise InvalidSequenceError("parts and alpha must have the same length")
    colorsets = tuple((1 << (1 - part)) if flag else 0 for part, flag in zip(parts, alpha))
    return RainbowSequence(2, tuple(parts), colorsets)


def iter_all_sequences(k: int, n: int) -> Iterator[RainbowSequence]:
    """Every sequence of RainSeq_k(n) in lexicographic entry-encoding order (no budget check)."""

    for codes in product(range(symbol_count(k)), repeat=n):
        yield RainbowSequence.from_codes(k, codes)


__all__ = [
    "ColorSymbol",
    "RainbowSequence",
    "Graph",
    "all_symbols",
    "symbol_count",
    "mask_to_colors",
    "colors_to_mask",
    "iter_bits",
    "normalize_subset",
    "subset_mask",
    "seq_to_graph",
    "restrict_sequence",
    "induced_subgraph",
    "permute_sequence",
    "canonicalize_sequence",
    "sequences_similar",
    "brute_force_similar",
    "embed_as_full_rainbow",
    "widen_palette",
    "has_all_colors",
    "separates_all_colors",
    "distinguishes_all_colors",
    "threshold_sequence",
    "threshold_bigraph_sequence",
    "iter_all_sequences",
]
