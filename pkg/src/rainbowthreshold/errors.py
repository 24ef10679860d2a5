"""Application specific exception hierarchy."""
from __future__ import annotations

from typing import Any


class RainbowThresholdError(RuntimeError):
    """Base exception that carries structured context."""

    def __init__(self, message: str, *, context: dict[str, Any] | None = None) -> None:
        super().__init__(message)
        self.context = context or {}


class InvalidSequenceError(RainbowThresholdError, ValueError):
    """Raised when a rainbow sequence violates its palette invariants."""


class InvalidGraphError(RainbowThresholdError, ValueError):
    """Raised when an adjacency matrix is not a simple undirected graph."""


class ParseError(RainbowThresholdError):
    """Raised when an RTS/RTG document cannot be parsed.

    ``line`` and ``column`` are 1-based and always present in ``context``.
    """

    def __init__(self, message: str, *, line: int, column: int = 1, source: str | None = None) -> None:
        context: dict[str, Any] = {"line": line, "column": column}
        if source:
            context["source"] = source
        super().__init__(message, context=context)
        self.line = line
        self.column = column

    def __str__(self) -> str:
        prefix = f"{self.context['source']}:" if "source" in self.context else ""
        return f"{prefix}{self.line}:{self.column}: {self.args[0]}"


class BudgetExceededError(RainbowThresholdError):
    """Raised when a search exhausts one of its configured budgets."""


class VacuousBoundError(RainbowThresholdError):
    """Raised when a closed-form bound is undefined for the given parameters."""


class HypothesisViolationError(RainbowThresholdError):
    """Raised when a construction's preconditions cannot be met."""


class ExperimentConfigError(RainbowThresholdError):
    """Raised when an experiment configuration is invalid."""


__all__ = [
    "RainbowThresholdError",
    "InvalidSequenceError",
    "InvalidGraphError",
    "ParseError",
    "BudgetExceededError",
    "VacuousBoundError",
    "HypothesisViolationError",
    "ExperimentConfigError",
]
