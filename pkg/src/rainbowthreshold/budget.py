"""Search budgets shared by the enumeration and recognition kernels."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

from .errors import BudgetExceededError

DEFAULT_LIMITS: dict[str, int] = {
    "sequences": 100_000_000,
    "orderings": 1_000_000,
    "search_nodes": 50_000_000,
    "canonical_leaves": 1_000_000,
    "iso_vertices": 10,
}
DEFAULT_TIME_LIMIT = 60.0


@dataclass
class Budget:
    """Named counters with limits plus an optional wall-clock deadline.

    A budget is mutable and owned by a single call chain; create a fresh one per
    command or per worker.
    """

    limits: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_LIMITS))
    time_limit: float | None = DEFAULT_TIME_LIMIT
    used: dict[str, int] = field(default_factory=dict)
    _started: float = field(default_factory=time.monotonic, repr=False)

    @classmethod
    def unlimited(cls) -> "Budget":
        return cls(limits={}, time_limit=None)

    @classmethod
    def from_defaults(cls, defaults: Any) -> "Budget":
        """Build from an object exposing ``budget_limits`` and ``time_limit``."""

        return cls(limits=dict(defaults.budget_limits), time_limit=defaults.time_limit)

    def spawn(self) -> "Budget":
        """Fresh counters under the same limits and the same deadline."""

        return Budget(limits=dict(self.limits), time_limit=self.time_limit, _started=self._started)

    def limit(self, name: str) -> int | None:
        return self.limits.get(name)

    def require(self, name: str, amount: int) -> None:
        """Fail up front when a known amount of work exceeds ``name``."""

        limit = self.limits.get(name)
        if limit is not None and amount > limit:
            raise BudgetExceededError(
                f"{name} budget exceeded: {amount} > {limit}",
                context={"budget": name, "requested": amount, "limit": limit},
            )

    def charge(self, name: str, amount: int = 1) -> None:
        """Consume ``amount`` units of ``name`` and check the deadline."""

        used = self.used.get(name, 0) + amount
        self.used[name] = used
        limit = self.limits.get(name)
        if limit is not None and used > limit:
            raise BudgetExceededError(
                f"{name} budget exhausted after {limit} units",
                context={"budget": name, "limit": limit},
            )
        # checking the clock on every unit is measurable in tight loops
        if self.time_limit is not None and used & 0x3FF == 0:
            self.check_time()

    def check_time(self) -> None:
        if self.time_limit is None:
            return
        elapsed = time.monotonic() - self._started
        if elapsed > self.time_limit:
            raise BudgetExceededError(
                f"time budget of {self.time_limit:g}s exhausted",
                context={"budget": "time", "limit": self.time_limit, "elapsed": round(elapsed, 3)},
            )


def resolve(budget: Budget | None) -> Budget:
    return budget if budget is not None else Budget()


__all__ = ["Budget", "DEFAULT_LIMITS", "DEFAULT_TIME_LIMIT", "resolve"]
