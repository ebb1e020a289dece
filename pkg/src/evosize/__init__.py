"""Constrained evolutionary sizing of analog op-amps."""

from .core import (
    Bounds,
    Candidate,
    ContractError,
    Evaluation,
    EvaluationBudget,
    Evaluator,
    InfeasibleSpecError,
    SearchSpace,
    SearchStarvationError,
    clamp_to_nearest_bound,
    record_evaluation,
    spawn_rng_stream,
)

__version__ = "0.1.0"
