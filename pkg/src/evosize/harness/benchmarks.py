"""Test functions with known optima, exposed through the evaluator interface."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..core import Bounds, ContractError, Evaluation, SearchSpace


class ConfigError(ValueError):
    """An experiment or benchmark was configured inconsistently."""


def sphere(x: np.ndarray) -> float:
    return float(np.sum(np.square(x)))


def rosenbrock(x: np.ndarray) -> float:
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))


def _first_at_least_one(x: np.ndarray) -> bool:
    return bool(x[0] >= 1.0)


# name -> (objective, feasibility predicate or None, default half-width of the box)
_BENCHMARKS: dict[str, tuple[Callable[[np.ndarray], float], Callable[[np.ndarray], bool] | None, float]] = {
    "sphere": (sphere, None, 5.0),
    "rosenbrock": (rosenbrock, None, 5.0),
    "constrained_sphere": (sphere, _first_at_least_one, 5.0),
}

BENCHMARKS = tuple(_BENCHMARKS)


@dataclass(frozen=True)
class BenchmarkProblem:
    name: str
    space: SearchSpace
    objective: Callable[[np.ndarray], float] = field(repr=False)
    predicate: Callable[[np.ndarray], bool] | None = field(default=None, repr=False)

    def evaluate(self, position) -> Evaluation:
        x = np.asarray(position, dtype=float)
        if x.shape != self.space.lower.shape:
            raise ContractError(f"expected dimension {self.space.dimension}, got {x.size}")
        ok = True if self.predicate is None else self.predicate(x)
        violations = () if ok else (("predicate", -1.0),)
        return Evaluation(self.objective(x), ok, None, violations)

    def derived_bounds(self) -> Bounds:
        # no modelling knowledge: the derived region is the whole box
        return Bounds(self.space.lower, self.space.upper, self.space.names)


def benchmark_evaluator(name: str, D: int, half_width: float | None = None) -> BenchmarkProblem:
    if name not in _BENCHMARKS:
        raise ConfigError(f"unknown benchmark {name!r}; choose from {', '.join(BENCHMARKS)}")
    if not isinstance(D, (int, np.integer)) or D < 1:
        raise ConfigError("benchmark dimension must be a positive integer")
    if name == "rosenbrock" and D < 2:
        raise ConfigError("rosenbrock needs D >= 2")
    fn, pred, default = _BENCHMARKS[name]
    h = default if half_width is None else float(half_width)
    space = SearchSpace(np.full(D, -h), np.full(D, h), tuple(f"x{d}" for d in range(D)))
    return BenchmarkProblem(name, space, fn, pred)
