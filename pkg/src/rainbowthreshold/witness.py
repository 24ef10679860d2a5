"""Cut sets proving that an ℓ-good (k+1)-colour graph is isomorphic to no k-colour one.

The cut takes one vertex of every colour from the first window, one vertex from every
other window in the middle, and one vertex for every colourset from the last window.
Between two middle points a whole window passes, so the vertices in between realise
many distinct adjacency patterns towards the cut, more than ``class_bound(k, |X|)``
permits for a ``k``-rainbow threshold graph.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .core_model import RainbowSequence, has_all_colors, separates_all_colors, seq_to_graph, symbol_count
from .equivalence import class_bound, outside_class_count
from .errors import HypothesisViolationError, InvalidSequenceError
from .goodness import fraction_to_json, is_ell_good_seq, window_bounds
from .logging_config import get_logger

LOGGER = get_logger(__name__)


@dataclass(frozen=True)
class WitnessSet:
    k: int
    ell: int
    prefix: tuple[int, ...]
    middle: tuple[int, ...]
    suffix: tuple[int, ...]
    outside_classes: int
    bound: Fraction

    @property
    def cut(self) -> tuple[int, ...]:
        return self.prefix + self.middle + self.suffix

    @property
    def t(self) -> int:
        return len(self.cut)

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "ell": self.ell,
            "t": self.t,
            "cut": list(self.cut),
            "prefix": list(self.prefix),
            "middle": list(self.middle),
            "suffix": list(self.suffix),
            "outside_classes": self.outside_classes,
            "class_bound": fraction_to_json(self.bound),
            "certified": self.outside_classes > self.bound,
        }


def witness_capacity(palette: int) -> int:
    """Windows needed for a palette of ``palette`` colours: ``K * 2**K * (K + 2**K)``."""

    return palette * (1 << palette) * (palette + (1 << palette))


def cycling_sequence(k: int, n: int) -> RainbowSequence:
    """Entry ``i`` carries symbol code ``i mod k*2**k``; ℓ-good whenever ``k*2**k`` divides ℓ."""

    m = symbol_count(k)
    return RainbowSequence.from_codes(k, (i % m for i in range(n)))


def _violation(condition: str, message: str, **context: Any) -> HypothesisViolationError:
    return HypothesisViolationError(message, context={"condition": condition, **context})


def _leftmost_by(values: dict[int, int], start: int, stop: int, key: Any) -> dict[Any, int]:
    chosen: dict[Any, int] = {}
    for position in range(start, stop):
        chosen.setdefault(key(values[position], position), position)
    return chosen


def build_witness_set(sequence: RainbowSequence, ell: int) -> WitnessSet:
    """Deterministic leftmost choices; raises when a precondition or condition (a)-(e) fails."""

    palette = sequence.k
    if palette < 2:
        raise InvalidSequenceError("witness sets need at least two colours", context={"k": palette})
    k = palette - 1
    n = sequence.n
    windows_total = n // ell if ell >= 1 else 0
    if windows_total < witness_capacity(palette):
        raise _violation(
            "capacity",
            f"n // ell = {windows_total} is below {witness_capacity(palette)}",
            windows=windows_total,
            required=witness_capacity(palette),
        )
    if not is_ell_good_seq(sequence, ell):
        raise _violation("good", f"sequence is not {ell}-good", ell=ell)

    windows = window_bounds(n, ell)
    first_start, first_stop = windows[0]
    last_start, last_stop = windows[-1]
    colors = dict(enumerate(sequence.colors))
    colorsets = dict(enumerate(sequence.colorsets))

    prefix = tuple(sorted(_leftmost_by(colors, first_start, first_stop, lambda color, _: color).values()))
    if len(prefix) != palette:
        raise _violation("a", "first window misses a colour", window=[first_start, first_stop])

    suffix = tuple(sorted(_leftmost_by(colorsets, last_start, last_stop, lambda colorset, _: colorset).values()))
    if len(suffix) != 1 << palette:
        raise _violation("b", "last window misses a colourset", window=[last_start, last_stop])

    count = (windows_total - 5) // 2
    middle = tuple(windows[2 * j][0] for j in range(1, count + 1))
    if middle and middle[-1] >= last_start - ell:
        raise _violation("c", "middle points reach the last windows", middle=list(middle))

    if not has_all_colors(sequence, prefix):
        raise _violation("d", "prefix does not carry every colour", prefix=list(prefix))
    if not separates_all_colors(sequence, suffix):
        raise _violation("d", "suffix does not separate every colour", suffix=list(suffix))

    t = len(prefix) + len(middle) + len(suffix)
    ceiling = windows_total + k - 4 + (1 << palette)
    if t > ceiling:
        raise _violation("e", f"cut size {t} exceeds {ceiling}", t=t, ceiling=ceiling)

    graph = seq_to_graph(sequence)
    cut = prefix + middle + suffix
    outside = outside_class_count(graph, cut)
    bound = class_bound(k, t)
    if outside <= bound:
        raise _violation(
            "certificate",
            f"{outside} outside classes do not exceed the bound {bound}",
            outside=outside,
            bound=str(bound),
        )
    LOGGER.info(
        "Built witness set", extra={"k": k, "ell": ell, "n": n, "t": t, "outside_classes": outside}
    )
    return WitnessSet(k=k, ell=ell, prefix=prefix, middle=middle, suffix=suffix, outside_classes=outside, bound=bound)


__all__ = ["WitnessSet", "witness_capacity", "cycling_sequence", "build_witness_set"]
