"""Run plumbing shared by every optimizer.

Each candidate update is a task that owns its random stream, keyed by
``(run seed, phase, iteration, slot)``, and its own evaluation tally.  Tasks
read a snapshot of the population and return proposals; the caller applies
them at one synchronisation point.  Results therefore do not depend on how
``map_fn`` schedules the tasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence, TypeVar

import numpy as np

from ..core import (
    Bounds,
    Candidate,
    EvaluationBudget,
    Evaluator,
    SearchStarvationError,
    best_index,
    clamp_to_nearest_bound,
    evaluate_candidate,
    spawn_rng_stream,
)

T = TypeVar("T")
R = TypeVar("R")

# random-stream ids, one per kind of task
INIT, EMPLOYED, ONLOOKER, SCOUT, OFFSPRING, AGENT, PARTICLE, REGENERATE = range(8)


class IterationRecord(NamedTuple):
    best_fitness: float
    mean_fitness: float
    evaluations: int
    elapsed: float


@dataclass(frozen=True)
class OptimizerResult:
    best: Candidate
    history: tuple[IterationRecord, ...]
    budget: EvaluationBudget
    elapsed: float
    population: tuple[Candidate, ...] = ()
    algorithm: str = ""

    @property
    def evaluations(self) -> int:
        return self.budget.evaluations

    def best_series(self) -> np.ndarray:
        return np.array([h.best_fitness for h in self.history])


class SearchContext:
    """State shared by the tasks of one run."""

    def __init__(self, problem: Evaluator, seed: int, modified: bool,
                 map_fn: Callable[..., Iterable] | None = None) -> None:
        self.problem = problem
        self.seed = int(seed)
        self.modified = modified
        self.box: Bounds = problem.space
        # the modified variants search (and repair into) the derived bounds
        self.bounds: Bounds = problem.derived_bounds() if modified else problem.space
        self.budget = EvaluationBudget()
        self._map = map_fn or map
        self.best: Candidate | None = None
        self.history: list[IterationRecord] = []

    @property
    def dimension(self) -> int:
        return self.box.dimension

    def rng(self, phase: int, ite: int, slot: int) -> np.random.Generator:
        return spawn_rng_stream(self.seed, phase, ite, slot)

    def repair(self, position: np.ndarray) -> np.ndarray:
        return clamp_to_nearest_bound(position, self.bounds)

    def evaluate(self, position: np.ndarray, tally: EvaluationBudget) -> Candidate:
        return evaluate_candidate(self.problem, position, tally)

    def propose(self, make: Callable[[], np.ndarray], attempts: int,
                tally: EvaluationBudget) -> Candidate:
        """Repair and evaluate ``make()`` until a proposal survives.

        Returns the last proposal tried, feasible or not.
        """
        cand = None
        for _ in range(attempts):
            cand = self.evaluate(self.repair(make()), tally)
            if cand.feasible:
                break
        return cand

    def parallel(self, task: Callable[[T, EvaluationBudget], R], items: Sequence[T]) -> list[R]:
        """Run ``task(item, tally)`` for every item and merge the tallies."""
        def wrapped(item):
            tally = EvaluationBudget()
            return task(item, tally), tally.evaluations

        out = []
        for value, n in list(self._map(wrapped, items)):
            self.budget.record(n)
            out.append(value)
        return out

    def initial_population(self, n: int, attempts: int) -> list[Candidate]:
        source = self.bounds

        def sample(i: int, tally: EvaluationBudget) -> Candidate:
            rng = self.rng(INIT, 0, i)
            cand = self.propose(lambda: source.sample_uniform(rng), attempts, tally)
            if not cand.feasible:
                raise SearchStarvationError(
                    f"initial member {i}: no sample passed the survivability test in {attempts} attempts")
            return cand

        return self.parallel(sample, range(n))

    def observe(self, population: Sequence[Candidate], elite: Sequence[Candidate] = ()) -> None:
        """Memorise the best-so-far and append one history record.

        ``elite`` holds remembered candidates that compete for best-so-far
        but are not counted in the population mean.
        """
        pool = list(population) + list(elite)
        top = pool[best_index(pool)]
        if self.best is None or top.better_than(self.best):
            self.best = top
        mean = float(np.mean([c.fitness for c in population]))
        self.history.append(IterationRecord(float(self.best.fitness), mean,
                                            self.budget.evaluations, self.budget.elapsed))

    def result(self, population: Sequence[Candidate], algorithm: str) -> OptimizerResult:
        return OptimizerResult(self.best, tuple(self.history), self.budget,
                               self.budget.elapsed, tuple(population), algorithm)


def partner_index(i: int, n: int, rng: np.random.Generator) -> int:
    """Uniform index in ``range(n)`` other than ``i``."""
    k = int(rng.integers(0, n - 1))
    return k + 1 if k >= i else k


def two_distinct(n: int, rng: np.random.Generator) -> tuple[int, int]:
    a, b = rng.choice(n, size=2, replace=False)
    return int(a), int(b)
