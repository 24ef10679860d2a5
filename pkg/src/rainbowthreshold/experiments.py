"""Exact and Monte Carlo experiments over rainbow sequences and graphs.

Exact experiments count deduplicated graphs (or every sequence, where the population is
labelled ``sequences``). Monte Carlo experiments sample sequences uniformly; their
estimates are sequence-level and carry an exact Clopper-Pearson interval.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Any, Callable, Iterable, Mapping

import jsonschema
import numpy as np
from scipy import stats

from .budget import Budget, resolve
from .core_model import Graph, RainbowSequence, seq_to_graph, symbol_count
from .equivalence import class_bound, outside_class_count
from .errors import ExperimentConfigError, InvalidSequenceError
from .goodness import (
    delta,
    exact_goodness_counts,
    fraction_to_json,
    good_graph_lower,
    non_good_fraction_upper,
    non_good_sequence_upper,
    window_bounds,
)
from .isomorphism import canonical_form
from .logging_config import get_logger
from .recognition import enumerate_graphs, is_threshold_graph
from .witness import build_witness_set, cycling_sequence

LOGGER = get_logger(__name__)

CONFIDENCE_LEVEL = 0.95
TRIALS_PER_STREAM = 10_000


@dataclass(frozen=True)
class Estimate:
    successes: int
    trials: int
    lower: float
    upper: float
    level: float = CONFIDENCE_LEVEL

    @property
    def point(self) -> float:
        return self.successes / self.trials

    def to_dict(self) -> dict[str, Any]:
        return {
            "successes": self.successes,
            "trials": self.trials,
            "point": self.point,
            "lower": self.lower,
            "upper": self.upper,
            "level": self.level,
        }


@dataclass
class ExperimentReport:
    experiment: str
    parameters: dict[str, Any]
    mode: str
    population: str
    counts: dict[str, int] = field(default_factory=dict)
    fractions: dict[str, Fraction] = field(default_factory=dict)
    estimate: Estimate | None = None
    checks: dict[str, bool] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    wall_time: float | None = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_dict(self, *, include_timing: bool = False) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "experiment": self.experiment,
            "parameters": dict(self.parameters),
            "mode": self.mode,
            "population": self.population,
            "counts": dict(self.counts),
            "fractions": {name: fraction_to_json(value) for name, value in self.fractions.items()},
            "estimate": self.estimate.to_dict() if self.estimate else None,
            "checks": dict(self.checks),
            "notes": list(self.notes),
        }
        if include_timing:
            payload["wall_time"] = self.wall_time
        return payload

    def to_row(self) -> dict[str, Any]:
        """Flat CSV row: one per (experiment, k, n, ell)."""

        row: dict[str, Any] = {
            "experiment": self.experiment,
            "k": self.parameters.get("k"),
            "n": self.parameters.get("n"),
            "ell": self.parameters.get("ell"),
            "mode": self.mode,
            "population": self.population,
            "passed": self.passed,
        }
        row.update({f"count_{name}": value for name, value in self.counts.items()})
        row.update({f"fraction_{name}": f"{value.numerator}/{value.denominator}" for name, value in self.fractions.items()})
        if self.estimate is not None:
            row.update({f"estimate_{name}": value for name, value in self.estimate.to_dict().items()})
        return row


def clopper_pearson(successes: int, trials: int, level: float = CONFIDENCE_LEVEL) -> tuple[float, float]:
    """Exact binomial interval from beta quantiles."""

    if trials < 1 or not 0 <= successes <= trials:
        raise ValueError("require 0 <= successes <= trials and trials >= 1")
    alpha = 1 - level
    lower = 0.0 if successes == 0 else float(stats.beta.ppf(alpha / 2, successes, trials - successes + 1))
    upper = 1.0 if successes == trials else float(stats.beta.ppf(1 - alpha / 2, successes + 1, trials - successes))
    return lower, upper


def _draw_codes(rng: np.random.Generator, k: int, n: int, size: int | None = None) -> np.ndarray:
    shape = (n,) if size is None else (size, n)
    return rng.integers(0, symbol_count(k), size=shape, dtype=np.int64)


def sample_sequence(k: int, n: int, seed: int | None) -> RainbowSequence:
    """Uniform draw from RainSeq_k(n), reproducible per ``seed``."""

    if k < 1:
        raise InvalidSequenceError("k must be at least 1", context={"k": k})
    codes = _draw_codes(np.random.default_rng(seed), k, n)
    return RainbowSequence.from_codes(k, (int(code) for code in codes))


def _good_rows(codes: np.ndarray, k: int, ell: int) -> np.ndarray:
    """Row-wise ℓ-goodness of a ``(trials, n)`` matrix of symbol codes."""

    trials, n = codes.shape
    good = np.ones(trials, dtype=bool)
    rows = np.arange(trials)[:, None]
    for start, stop in window_bounds(n, ell):
        seen = np.zeros((trials, symbol_count(k)), dtype=bool)
        seen[rows, codes[:, start:stop]] = True
        good &= seen.all(axis=1)
    return good


def estimate_nongood_fraction(k: int, n: int, ell: int, trials: int, seed: int | None) -> ExperimentReport:
    if trials < 1:
        raise InvalidSequenceError("trials must be at least 1", context={"trials": trials})
    bound = delta(k, n, ell)
    streams = np.random.SeedSequence(seed).spawn(math.ceil(trials / TRIALS_PER_STREAM))
    non_good = 0
    remaining = trials
    for stream in streams:
        size = min(remaining, TRIALS_PER_STREAM)
        codes = _draw_codes(np.random.default_rng(stream), k, n, size)
        non_good += int(size - _good_rows(codes, k, ell).sum())
        remaining -= size
    lower, upper = clopper_pearson(non_good, trials)
    estimate = Estimate(successes=non_good, trials=trials, lower=lower, upper=upper)
    stderr = math.sqrt(estimate.point * (1 - estimate.point) / trials)
    return ExperimentReport(
        experiment="nongood-fraction",
        parameters={"k": k, "n": n, "ell": ell, "trials": trials, "seed": seed},
        mode="monte-carlo",
        population="sequences",
        counts={"non_good": non_good, "trials": trials},
        fractions={"delta": bound},
        estimate=estimate,
        checks={"within_delta": estimate.point <= float(bound) + 3 * stderr},
    )


def exact_nongood_fraction(k: int, n: int, ell: int, budget: Budget | None = None) -> ExperimentReport:
    counts = exact_goodness_counts(k, n, ell, budget)
    bound = delta(k, n, ell)
    fraction = Fraction(counts.non_good_sequences, counts.sequences)
    return ExperimentReport(
        experiment="nongood-exact",
        parameters={"k": k, "n": n, "ell": ell},
        mode="exact",
        population="sequences",
        counts={"non_good": counts.non_good_sequences, "population": counts.sequences},
        fractions={"non_good": fraction, "delta": bound},
        checks={"within_delta": fraction <= bound},
    )


def counting_lemma_check(k: int, n: int, ell: int, budget: Budget | None = None) -> ExperimentReport:
    """Exhaustive counts against the non-good sequence bound, the good graph bound and the fraction bound."""

    counts = exact_goodness_counts(k, n, ell, budget)
    value = delta(k, n, ell)
    report = ExperimentReport(
        experiment="counting-lemma",
        parameters={"k": k, "n": n, "ell": ell},
        mode="exact",
        population="graphs",
        counts={
            "sequences": counts.sequences,
            "non_good_sequences": counts.non_good_sequences,
            "good_graphs": counts.good_graphs,
            "non_good_graphs": counts.non_good_graphs,
            "population": counts.graphs,
        },
        fractions={
            "delta": value,
            "non_good_graphs": Fraction(counts.non_good_graphs, counts.graphs),
            "non_good_seq_upper": non_good_sequence_upper(k, n, ell),
        },
        checks={"non_good_sequences": counts.non_good_sequences <= non_good_sequence_upper(k, n, ell)},
    )
    if value < 1:
        lower = good_graph_lower(k, n, ell)
        upper = non_good_fraction_upper(k, n, ell)
        report.fractions.update({"good_graph_lower": lower, "non_good_fraction_upper": upper})
        report.checks["good_graphs"] = counts.good_graphs >= lower
        report.checks["non_good_fraction"] = report.fractions["non_good_graphs"] <= upper
    else:
        report.notes.append("delta >= 1: the good graph and fraction bounds are vacuous")
    return report


def exact_class_fractions(k: int, n: int, budget: Budget | None = None) -> ExperimentReport:
    """Fraction of RainGraph_k(n) isomorphic to a member of RainGraph_{k-1}(n)."""

    budget = resolve(budget)
    graphs = enumerate_graphs(k, n, budget)
    if k == 1:
        # a palette of zero colours admits no sequence on a nonempty vertex set
        lower_count = len(graphs) if n == 0 else 0
    elif k == 2:
        lower_count = sum(1 for graph in graphs if is_threshold_graph(graph))
    else:
        forms = {canonical_form(graph, budget) for graph in enumerate_graphs(k - 1, n, budget)}
        lower_count = sum(1 for graph in graphs if canonical_form(graph, budget) in forms)
    return ExperimentReport(
        experiment="class-fractions",
        parameters={"k": k, "n": n},
        mode="exact",
        population="graphs",
        counts={"in_lower_class": lower_count, "population": len(graphs)},
        fractions={"in_lower_class": Fraction(lower_count, len(graphs))},
    )


def _has_isolated(graph: Graph) -> bool:
    return any(row == 0 for row in graph.rows)


def _has_dominating(graph: Graph) -> bool:
    full = (1 << graph.n) - 1
    return any(row == full ^ (1 << vertex) for vertex, row in enumerate(graph.rows))


def zero_one_lower_bound(k: int) -> Fraction:
    return Fraction(1, math.factorial(k) * symbol_count(k) ** (k + (1 << k)))


def zero_one_fractions(k: int, n: int, budget: Budget | None = None) -> ExperimentReport:
    """Fractions with an isolated vertex and with a dominating vertex."""

    graphs = enumerate_graphs(k, n, budget)
    isolated = sum(1 for graph in graphs if _has_isolated(graph))
    dominating = sum(1 for graph in graphs if _has_dominating(graph))
    both = sum(1 for graph in graphs if _has_isolated(graph) and _has_dominating(graph))
    total = len(graphs)
    bound = zero_one_lower_bound(k)
    report = ExperimentReport(
        experiment="zero-one",
        parameters={"k": k, "n": n},
        mode="exact",
        population="graphs",
        counts={"isolated": isolated, "dominating": dominating, "both": both, "population": total},
        fractions={
            "isolated": Fraction(isolated, total),
            "dominating": Fraction(dominating, total),
            "lower_bound": bound,
        },
        checks={
            "isolated_positive": isolated > 0,
            "dominating_positive": dominating > 0,
            "isolated_above_bound": Fraction(isolated, total) >= bound,
            "dominating_above_bound": Fraction(dominating, total) >= bound,
        },
    )
    if n >= 2:
        report.checks["exclusive"] = both == 0
    return report


def extension_prefix_suffix(k: int, n: int) -> tuple[list[int], list[int]]:
    """Symbol codes pinning colour ``i`` at position ``i`` and every colourset at the tail."""

    if n < k + (1 << k):
        raise InvalidSequenceError(
            f"n must be at least k + 2**k = {k + (1 << k)}", context={"k": k, "n": n}
        )
    prefix = [color << k for color in range(k)]
    suffix = list(range(1 << k))
    return prefix, suffix


def extension_image_count(k: int, n: int, budget: Budget | None = None) -> ExperimentReport:
    """Distinct graphs among sequences sharing the pinned prefix and suffix."""

    budget = resolve(budget)
    prefix, suffix = extension_prefix_suffix(k, n)
    free = n - len(prefix) - len(suffix)
    m = symbol_count(k)
    budget.require("sequences", m**free)
    images = set()
    for middle in product(range(m), repeat=free):
        budget.charge("search_nodes")
        images.add(seq_to_graph(RainbowSequence.from_codes(k, [*prefix, *middle, *suffix])))
    claimed = Fraction(m**free, math.factorial(k))
    report = ExperimentReport(
        experiment="extension-image",
        parameters={"k": k, "n": n},
        mode="exact",
        population="graphs",
        counts={"images": len(images), "extensions": m**free},
        fractions={"claimed": claimed},
        checks={"matches_formula": len(images) == claimed},
    )
    if len(images) != claimed:
        report.notes.append(f"discrepancy: {len(images)} distinct graphs against the formula value {claimed}")
        LOGGER.warning("Extension image count differs from the formula", extra={"k": k, "n": n, "images": len(images)})
    return report


def class_bound_check(k: int, n: int, budget: Budget | None = None) -> ExperimentReport:
    """Every graph of RainGraph_k(n) against every cut: outside classes never exceed the bound."""

    budget = resolve(budget)
    graphs = enumerate_graphs(k, n, budget)
    cuts = [cut for size in range(n + 1) for cut in combinations(range(n), size)]
    violations = 0
    for graph in graphs:
        for cut in cuts:
            budget.charge("search_nodes")
            if outside_class_count(graph, cut) > class_bound(k, len(cut)):
                violations += 1
    return ExperimentReport(
        experiment="class-bound",
        parameters={"k": k, "n": n},
        mode="exact",
        population="graphs",
        counts={"graphs": len(graphs), "cuts": len(cuts), "violations": violations},
        checks={"no_violations": violations == 0},
    )


def separation_certificate(k: int, ell: int, n: int) -> ExperimentReport:
    """Cycling (k+1)-colour sequence and the cut proving it is isomorphic to no k-colour graph."""

    witness = build_witness_set(cycling_sequence(k + 1, n), ell)
    return ExperimentReport(
        experiment="separation-witness",
        parameters={"k": k, "n": n, "ell": ell},
        mode="exact",
        population="graphs",
        counts={"t": witness.t, "outside_classes": witness.outside_classes},
        fractions={"class_bound": Fraction(witness.bound)},
        checks={"certified": witness.outside_classes > witness.bound},
        notes=[f"cut: {list(witness.cut)}"],
    )


Runner = Callable[[Mapping[str, Any], Budget], ExperimentReport]

EXPERIMENTS: dict[str, tuple[tuple[str, ...], Runner]] = {
    "nongood-fraction": (
        ("k", "n", "ell", "trials"),
        lambda p, b: estimate_nongood_fraction(p["k"], p["n"], p["ell"], p["trials"], p.get("seed")),
    ),
    "nongood-exact": (("k", "n", "ell"), lambda p, b: exact_nongood_fraction(p["k"], p["n"], p["ell"], b)),
    "counting-lemma": (("k", "n", "ell"), lambda p, b: counting_lemma_check(p["k"], p["n"], p["ell"], b)),
    "class-fractions": (("k", "n"), lambda p, b: exact_class_fractions(p["k"], p["n"], b)),
    "zero-one": (("k", "n"), lambda p, b: zero_one_fractions(p["k"], p["n"], b)),
    "extension-image": (("k", "n"), lambda p, b: extension_image_count(p["k"], p["n"], b)),
    "class-bound": (("k", "n"), lambda p, b: class_bound_check(p["k"], p["n"], b)),
    "separation-witness": (("k", "n", "ell"), lambda p, b: separation_certificate(p["k"], p["ell"], p["n"])),
}

_ENTRY_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["experiment"],
    "additionalProperties": False,
    "properties": {
        "experiment": {"type": "string"},
        "k": {"type": "integer", "minimum": 1},
        "n": {"type": "integer", "minimum": 0},
        "ell": {"type": "integer", "minimum": 1},
        "trials": {"type": "integer", "minimum": 1},
        "seed": {"type": ["integer", "null"], "minimum": 0},
    },
}

CONFIG_SCHEMA: dict[str, Any] = {
    "oneOf": [
        _ENTRY_SCHEMA,
        {"type": "array", "items": _ENTRY_SCHEMA},
        {
            "type": "object",
            "required": ["experiments"],
            "additionalProperties": False,
            "properties": {"experiments": {"type": "array", "items": _ENTRY_SCHEMA}},
        },
    ]
}


def parse_config(config: Any) -> list[dict[str, Any]]:
    """Normalise a single entry, a list of entries, or ``{"experiments": [...]}``."""

    try:
        jsonschema.validate(instance=config, schema=CONFIG_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ExperimentConfigError(
            f"invalid experiment config: {exc.message}", context={"path": list(exc.absolute_path)}
        ) from exc
    if isinstance(config, list):
        entries = config
    elif "experiments" in config:
        entries = config["experiments"]
    else:
        entries = [config]
    for index, entry in enumerate(entries):
        name = entry["experiment"]
        if name not in EXPERIMENTS:
            raise ExperimentConfigError(
                f"unknown experiment {name!r}", context={"index": index, "known": sorted(EXPERIMENTS)}
            )
        missing = [key for key in EXPERIMENTS[name][0] if key not in entry]
        if missing:
            raise ExperimentConfigError(
                f"experiment {name!r} needs {', '.join(missing)}", context={"index": index, "missing": missing}
            )
    return [dict(entry) for entry in entries]


def run_report(
    config: Any,
    budget_factory: Callable[[], Budget] | None = None,
    *,
    default_seed: int | None = None,
) -> list[ExperimentReport]:
    """Run every configured experiment in order.

    Each experiment gets fresh counters from ``budget_factory``; by default they all
    share one deadline started here.
    """

    if budget_factory is None:
        budget_factory = Budget().spawn
    reports = []
    for entry in parse_config(config):
        if default_seed is not None:
            entry.setdefault("seed", default_seed)
        name = entry["experiment"]
        LOGGER.info("Running experiment", extra={"experiment": name, "parameters": entry})
        started = time.perf_counter()
        budget = budget_factory()
        budget.check_time()
        try:
            report = EXPERIMENTS[name][1](entry, budget)
        except InvalidSequenceError as exc:
            raise ExperimentConfigError(f"{name}: {exc}", context=exc.context) from exc
        report.wall_time = round(time.perf_counter() - started, 6)
        LOGGER.info(
            "Finished experiment",
            extra={"experiment": name, "passed": report.passed, "wall_time": report.wall_time},
        )
        reports.append(report)
    return reports


def reports_to_json(reports: Iterable[ExperimentReport], *, include_timing: bool = False) -> list[dict[str, Any]]:
    return [report.to_dict(include_timing=include_timing) for report in reports]


__all__ = [
    "CONFIG_SCHEMA",
    "EXPERIMENTS",
    "Estimate",
    "ExperimentReport",
    "clopper_pearson",
    "sample_sequence",
    "estimate_nongood_fraction",
    "exact_nongood_fraction",
    "counting_lemma_check",
    "exact_class_fractions",
    "zero_one_lower_bound",
    "zero_one_fractions",
    "extension_prefix_suffix",
    "extension_image_count",
    "class_bound_check",
    "separation_certificate",
    "parse_config",
    "run_report",
    "reports_to_json",
]
