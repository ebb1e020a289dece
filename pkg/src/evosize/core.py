"""Problem-independent building blocks shared by every optimizer.

Positions are plain float64 numpy vectors.  A :class:`Candidate` bundles a
position with its evaluation state; candidates are immutable and are
replaced (``dataclasses.replace``) rather than modified.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field, replace
from typing import Any, Callable, Iterable, Protocol, Sequence

import numpy as np


class ContractError(ValueError):
    """A caller broke a documented precondition."""


class InfeasibleSpecError(ValueError):
    """Design constraints leave an empty interval for some variable."""


class SearchStarvationError(RuntimeError):
    """A retry loop ran out of budget without finding a feasible point."""


def _as_vector(values: Iterable[float], name: str) -> np.ndarray:
    arr = np.array(values, dtype=float).reshape(-1)
    if arr.size == 0:
        raise ContractError(f"{name} must not be empty")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Bounds:
    """Closed per-variable intervals ``[lower[d], upper[d]]``.

    Degenerate intervals (lower == upper) are allowed; derived bounds can
    legitimately pin a variable.
    """

    lower: np.ndarray
    upper: np.ndarray
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        lo = _as_vector(self.lower, "lower")
        hi = _as_vector(self.upper, "upper")
        if lo.shape != hi.shape:
            raise ContractError(f"bound vectors differ in length: {lo.size} vs {hi.size}")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise ContractError("bounds must be finite")
        self._check_order(lo, hi)
        if self.names and len(self.names) != lo.size:
            raise ContractError("names must match the bound dimension")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        object.__setattr__(self, "names", tuple(self.names))

    def _check_order(self, lo: np.ndarray, hi: np.ndarray) -> None:
        if np.any(lo > hi):
            bad = int(np.argmax(lo > hi))
            raise ContractError(f"lower > upper in dimension {bad}")

    @property
    def dimension(self) -> int:
        return int(self.lower.size)

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def contains(self, position: Sequence[float]) -> bool:
        x = np.asarray(position, dtype=float)
        return bool(x.shape == self.lower.shape and np.all(x >= self.lower) and np.all(x <= self.upper))

    def sample_uniform(self, rng: np.random.Generator) -> np.ndarray:
        return rng.uniform(self.lower, self.upper)

    def intersect(self, other: "Bounds") -> "Bounds":
        return Bounds(np.maximum(self.lower, other.lower), np.minimum(self.upper, other.upper), self.names)


@dataclass(frozen=True)
class SearchSpace(Bounds):
    """The optimization box.  Every interval must have positive width."""

    def _check_order(self, lo: np.ndarray, hi: np.ndarray) -> None:
        if np.any(lo >= hi):
            bad = int(np.argmax(lo >= hi))
            raise ContractError(f"search space needs lower < upper (dimension {bad})")


@dataclass(frozen=True)
class Evaluation:
    """Outcome of one evaluator call (one survivability test)."""

    fitness: float
    feasible: bool
    report: Any = None
    violations: tuple = ()


@dataclass(frozen=True)
class Candidate:
    position: np.ndarray
    fitness: float | None = None
    feasible: bool = False
    trial: int = 0
    report: Any = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        pos = np.array(self.position, dtype=float).reshape(-1)
        pos.setflags(write=False)
        object.__setattr__(self, "position", pos)
        if self.trial < 0:
            raise ContractError("trial counter must be non-negative")

    @property
    def evaluated(self) -> bool:
        return self.fitness is not None

    def key(self) -> tuple[bool, float]:
        """Sort key for minimisation: feasible points first, then fitness."""
        if self.fitness is None:
            raise ContractError("candidate has not been evaluated")
        return (not self.feasible, self.fitness)

    def better_than(self, other: "Candidate") -> bool:
        return self.key() < other.key()

    def with_trial(self, trial: int) -> "Candidate":
        return replace(self, trial=trial)


def best_index(population: Sequence[Candidate]) -> int:
    """Index of the best member; ties go to the lowest index."""
    best = 0
    for i in range(1, len(population)):
        if population[i].key() < population[best].key():
            best = i
    return best


def ranked(population: Sequence[Candidate]) -> list[int]:
    """Indices ordered best first (stable, so ties keep index order)."""
    return sorted(range(len(population)), key=lambda i: population[i].key())


class EvaluationBudget:
    """Shared evaluation counter.  Increments are atomic."""

    def __init__(self, evaluations: int = 0) -> None:
        if evaluations < 0:
            raise ContractError("evaluations must be non-negative")
        self._evaluations = evaluations
        self._lock = threading.Lock()
        self.wall_start = time.perf_counter()

    @property
    def evaluations(self) -> int:
        return self._evaluations

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.wall_start

    def record(self, count: int = 1) -> int:
        if count < 0:
            raise ContractError("cannot record a negative number of evaluations")
        with self._lock:
            self._evaluations += count
            return self._evaluations

    def __repr__(self) -> str:
        return f"EvaluationBudget(evaluations={self._evaluations})"


def record_evaluation(budget: EvaluationBudget) -> EvaluationBudget:
    budget.record()
    return budget


class Evaluator(Protocol):
    """What an optimizer needs from a problem.

    ``evaluate`` is one survivability test: it returns the objective value,
    the pass/fail verdict and the backend's performance report.
    """

    space: SearchSpace

    def evaluate(self, position: np.ndarray) -> Evaluation: ...

    def derived_bounds(self) -> Bounds: ...


def evaluate_candidate(problem: Evaluator, position: np.ndarray, budget: EvaluationBudget,
                       trial: int = 0) -> Candidate:
    """Run one survivability test and wrap the result as a candidate."""
    ev = problem.evaluate(position)
    budget.record()
    return Candidate(position, float(ev.fitness), bool(ev.feasible), trial, ev.report)


def clamp_to_nearest_bound(position: Sequence[float], bounds: Bounds) -> np.ndarray:
    x = np.asarray(position, dtype=float)
    if x.shape != bounds.lower.shape:
        raise ContractError(f"position has dimension {x.size}, bounds have {bounds.dimension}")
    return np.minimum(np.maximum(x, bounds.lower), bounds.upper)


def spawn_rng_stream(master_seed: int, stream_id: int, *path: int) -> np.random.Generator:
    """Counter-based random stream addressed by ``(master_seed, stream_id, *path)``.

    The same address always yields the same sequence, independent of which
    worker asks for it or in what order.
    """
    seq = np.random.SeedSequence(int(master_seed), spawn_key=(int(stream_id), *map(int, path)))
    return np.random.Generator(np.random.Philox(seq))


MapFn = Callable[..., Iterable]
