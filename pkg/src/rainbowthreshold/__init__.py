"""k-rainbow threshold graphs: construction, recognition, goodness bounds and experiments."""

from .budget import Budget
from .core_model import ColorSymbol, Graph, RainbowSequence, seq_to_graph
from .errors import (
    BudgetExceededError,
    ExperimentConfigError,
    HypothesisViolationError,
    InvalidGraphError,
    InvalidSequenceError,
    ParseError,
    RainbowThresholdError,
    VacuousBoundError,
)

__all__ = [
    "Budget",
    "ColorSymbol",
    "Graph",
    "RainbowSequence",
    "seq_to_graph",
    "RainbowThresholdError",
    "InvalidSequenceError",
    "InvalidGraphError",
    "ParseError",
    "BudgetExceededError",
    "VacuousBoundError",
    "HypothesisViolationError",
    "ExperimentConfigError",
]
