"""ℓ-goodness of sequences and graphs plus the closed-form counting bounds.

A sequence is ℓ-good when every window ``[(r+1)ℓ, (r+2)ℓ)`` with ``0 <= r <= n//ℓ - 3``
contains every colour symbol. All bounds are exact ``Fraction`` values except the
almost-sure bound, which is reported in log2 form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any, NamedTuple, Sequence

from .budget import Budget, resolve
from .core_model import Graph, RainbowSequence, seq_to_graph, symbol_count
from .errors import InvalidSequenceError, VacuousBoundError
from .logging_config import get_logger
from .recognition import enumerate_sequences, is_ordered_k_rainbow, iter_preimages

LOGGER = get_logger(__name__)

DECIMAL_DIGITS = 20


def fraction_to_json(value: Fraction) -> dict[str, Any]:
    """Exact rational as numerator/denominator plus a fixed-precision decimal string."""

    with localcontext() as ctx:
        ctx.prec = DECIMAL_DIGITS
        rendered = Decimal(value.numerator) / Decimal(value.denominator)
    return {"numerator": value.numerator, "denominator": value.denominator, "decimal": str(rendered)}


def _check_params(k: int, n: int, ell: int) -> None:
    if k < 1 or ell < 1 or n < 0:
        raise InvalidSequenceError(
            "require k >= 1, ell >= 1 and n >= 0", context={"k": k, "n": n, "ell": ell}
        )


def window_bounds(n: int, ell: int) -> list[tuple[int, int]]:
    """Half-open windows ``[(r+1)ℓ, (r+2)ℓ)`` for ``r = 0 .. n//ℓ - 3``."""

    if ell < 1:
        raise InvalidSequenceError("ell must be positive", context={"ell": ell})
    return [((r + 1) * ell, (r + 2) * ell) for r in range(n // ell - 2)]


def is_ell_good_seq(sequence: RainbowSequence, ell: int) -> bool:
    codes = sequence.codes()
    wanted = symbol_count(sequence.k)
    return all(len(set(codes[start:stop])) == wanted for start, stop in window_bounds(sequence.n, ell))


def is_ell_good_graph(graph: Graph, k: int, ell: int, budget: Budget | None = None) -> bool:
    """True iff some ℓ-good sequence over ``[k]`` generates ``graph``.

    Prefixes are rejected as soon as a window closes without every symbol.
    """

    budget = resolve(budget)
    _check_params(k, graph.n, ell)
    if is_ordered_k_rainbow(graph, k, budget) is None:
        return False
    windows = window_bounds(graph.n, ell)
    if not windows:
        return True
    closing = {stop: start for start, stop in windows}
    wanted = symbol_count(k)

    def window_complete(colors: Sequence[int], colorsets: Sequence[int]) -> bool:
        start = closing.get(len(colors))
        if start is None:
            return True
        return len({(colors[i] << k) | colorsets[i] for i in range(start, len(colors))}) == wanted

    return next(iter_preimages(graph, k, budget, prefix_check=window_complete), None) is not None


def delta(k: int, n: int, ell: int) -> Fraction:
    """``(n // ℓ) * m * (1 - 1/m)**ℓ`` with ``m = k * 2**k``."""

    _check_params(k, n, ell)
    m = symbol_count(k)
    return (n // ell) * m * Fraction(m - 1, m) ** ell


def non_good_sequence_upper(k: int, n: int, ell: int) -> Fraction:
    return symbol_count(k) ** n * delta(k, n, ell)


def _fixing_multiplier(k: int) -> int:
    """Sequences sharing a graph once prefix and suffix are pinned: ``m**(k + 2**k) * k!``."""

    return symbol_count(k) ** (k + (1 << k)) * math.factorial(k)


def good_graph_lower(k: int, n: int, ell: int) -> Fraction:
    """May be nonpositive; see :func:`good_graph_lower_vacuous`."""

    return symbol_count(k) ** n * (1 - delta(k, n, ell)) / _fixing_multiplier(k)


def good_graph_lower_vacuous(k: int, n: int, ell: int) -> bool:
    return delta(k, n, ell) >= 1


def non_good_fraction_upper(k: int, n: int, ell: int) -> Fraction:
    value = delta(k, n, ell)
    if value >= 1:
        raise VacuousBoundError(
            "delta is at least 1 so the fraction bound is undefined",
            context={"k": k, "n": n, "ell": ell, "delta": str(value)},
        )
    return value / (1 - value) * _fixing_multiplier(k)


class AasHypotheses(NamedTuple):
    window_count: bool
    length: bool
    witness_capacity: bool

    def all(self) -> bool:
        return self.window_count and self.length and self.witness_capacity


def length_threshold(k: int) -> float:
    """Least ``n`` satisfying the length hypothesis: ``-2**(4k+7) / log2(1 - 1/((k+1) 2**(k+1)))``."""

    return -(2.0 ** (4 * k + 7)) / math.log2(1 - 1 / ((k + 1) * 2 ** (k + 1)))


def aas_hypotheses_ok(k: int, n: int, ell: int) -> AasHypotheses:
    _check_params(k, n, ell)
    windows = n // ell
    return AasHypotheses(
        window_count=windows >= 1 << (3 * k + 3),
        length=n >= length_threshold(k),
        witness_capacity=windows >= (k + 1) * (1 << (k + 1)) * (k + 1 + (1 << (k + 1))),
    )


@dataclass(frozen=True)
class AasBound:
    log2: float
    value: float | None

    def to_dict(self) -> dict[str, Any]:
        return {"log2": self.log2, "value": self.value}


def aas_bound(k: int, n: int) -> AasBound:
    """Almost-sure bound ``((1 - 1/((k+1) 2**(k+1)))**(1/2**(3k+3)))**n * 2**(2**(3k+5))`` in log2 form."""

    if k < 1 or n < 1:
        raise InvalidSequenceError("require k >= 1 and n >= 1", context={"k": k, "n": n})
    base = math.log2(1 - 1 / ((k + 1) * 2 ** (k + 1)))
    log2 = n / 2 ** (3 * k + 3) * base + 2.0 ** (3 * k + 5)
    value = 2.0**log2 if -1074 < log2 < 1024 else None
    return AasBound(log2=log2, value=value)


@dataclass(frozen=True)
class BoundReport:
    k: int
    n: int
    ell: int
    delta: Fraction
    non_good_seq_upper: Fraction
    good_graph_lower: Fraction
    good_graph_lower_vacuous: bool
    non_good_fraction_upper: Fraction | None
    hypotheses: AasHypotheses
    length_threshold: float
    aas_bound: AasBound

    def to_dict(self) -> dict[str, Any]:
        upper = self.non_good_fraction_upper
        return {
            "k": self.k,
            "n": self.n,
            "ell": self.ell,
            "delta": fraction_to_json(self.delta),
            "non_good_seq_upper": fraction_to_json(self.non_good_seq_upper),
            "good_graph_lower": fraction_to_json(self.good_graph_lower),
            "good_graph_lower_vacuous": self.good_graph_lower_vacuous,
            "non_good_fraction_upper": fraction_to_json(upper) if upper is not None else None,
            "hypotheses_ok": dict(self.hypotheses._asdict()),
            "length_threshold": self.length_threshold,
            "aas_bound": self.aas_bound.to_dict(),
        }


def bound_report(k: int, n: int, ell: int) -> BoundReport:
    value = delta(k, n, ell)
    return BoundReport(
        k=k,
        n=n,
        ell=ell,
        delta=value,
        non_good_seq_upper=non_good_sequence_upper(k, n, ell),
        good_graph_lower=good_graph_lower(k, n, ell),
        good_graph_lower_vacuous=value >= 1,
        non_good_fraction_upper=non_good_fraction_upper(k, n, ell) if value < 1 else None,
        hypotheses=aas_hypotheses_ok(k, n, ell),
        length_threshold=length_threshold(k),
        aas_bound=aas_bound(k, max(n, 1)),
    )


@dataclass(frozen=True)
class GoodnessCounts:
    k: int
    n: int
    ell: int
    sequences: int
    non_good_sequences: int
    graphs: int
    good_graphs: int

    @property
    def non_good_graphs(self) -> int:
        return self.graphs - self.good_graphs

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "n": self.n,
            "ell": self.ell,
            "sequences": self.sequences,
            "non_good_sequences": self.non_good_sequences,
            "graphs": self.graphs,
            "good_graphs": self.good_graphs,
            "non_good_graphs": self.non_good_graphs,
        }


def exact_goodness_counts(k: int, n: int, ell: int, budget: Budget | None = None) -> GoodnessCounts:
    """Exhaustive counts over RainSeq_k(n); a graph is good when any of its preimages is."""

    _check_params(k, n, ell)
    sequences = 0
    non_good = 0
    good_by_graph: dict[Graph, bool] = {}
    for sequence in enumerate_sequences(k, n, budget):
        sequences += 1
        good = is_ell_good_seq(sequence, ell)
        if not good:
            non_good += 1
        graph = seq_to_graph(sequence)
        good_by_graph[graph] = good_by_graph.get(graph, False) or good
    counts = GoodnessCounts(
        k=k,
        n=n,
        ell=ell,
        sequences=sequences,
        non_good_sequences=non_good,
        graphs=len(good_by_graph),
        good_graphs=sum(good_by_graph.values()),
    )
    LOGGER.debug("Exhaustive goodness counts", extra=counts.to_dict())
    return counts


__all__ = [
    "AasBound",
    "AasHypotheses",
    "BoundReport",
    "GoodnessCounts",
    "fraction_to_json",
    "window_bounds",
    "is_ell_good_seq",
    "is_ell_good_graph",
    "delta",
    "non_good_sequence_upper",
    "good_graph_lower",
    "good_graph_lower_vacuous",
    "non_good_fraction_upper",
    "length_threshold",
    "aas_hypotheses_ok",
    "aas_bound",
    "bound_report",
    "exact_goodness_counts",
]
