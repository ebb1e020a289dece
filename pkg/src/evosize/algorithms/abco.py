"""Artificial bee colony: the modified variant and the standard baseline."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from ..core import Candidate, ContractError, EvaluationBudget, Evaluator, best_index
from .engine import EMPLOYED, ONLOOKER, SCOUT, OptimizerResult, SearchContext, partner_index, two_distinct
from .operators import abco_neighbor, random_crossover_point, single_point_crossover
from .params import AbcoParams
from .schedules import abco_dim_schedule, abco_limit_schedule

RETRY_FACTOR = 50


def roulette_weights(population: Sequence[Candidate]) -> np.ndarray:
    """Selection probabilities ``1 / (1 + f)`` normalised over the colony."""
    f = np.array([c.fitness for c in population], dtype=float)
    if np.any(f < 0):
        raise ContractError("roulette weights assume non-negative fitness")
    w = 1.0 / (1.0 + f)
    return w / w.sum()


def abco_scout_replacement(exhausted: Candidate, best: Candidate, population: Sequence[Candidate],
                           rng: np.random.Generator,
                           propose: Callable[[Callable[[], np.ndarray]], Candidate]) -> Candidate:
    """Replacement for an exhausted source built by crossover.

    Child A crosses the exhausted source with the best one; child B crosses
    two distinct random members.  ``propose`` evaluates a generator of
    positions (retrying as it sees fit).  The better child is returned with
    its trial counter reset; ties go to A.
    """
    n = len(population)
    if n < 2:
        raise ContractError("scout replacement needs at least two sources")
    D = exhausted.position.size

    def child_a() -> np.ndarray:
        return single_point_crossover(exhausted, best, random_crossover_point(D, rng))

    def child_b() -> np.ndarray:
        p, q = two_distinct(n, rng)
        return single_point_crossover(population[p], population[q], random_crossover_point(D, rng))

    a, b = propose(child_a), propose(child_b)
    return (b if b.better_than(a) else a).with_trial(0)


def _improves(new: Candidate, old: Candidate) -> bool:
    # greedy selection: strictly better and feasible
    return new.feasible and new.better_than(old)


def _run_abco(problem: Evaluator, params: AbcoParams, seed: int, modified: bool,
              map_fn=None) -> OptimizerResult:
    ctx = SearchContext(problem, seed, modified, map_fn)
    n, D = params.population, ctx.dimension
    attempts = params.max_count if modified else 1
    pop = ctx.initial_population(n, params.init_attempts)

    for ite in range(1, params.max_ite + 1):
        if modified:
            limit = abco_limit_schedule(ite, params.max_ite, params.limit_min, params.limit_max)
            dim = abco_dim_schedule(ite, params.max_ite, D)
        else:
            limit, dim = params.limit_max, 1

        def neighbour_of(j: int, snapshot: Sequence[Candidate], rng) -> Callable[[], np.ndarray]:
            def make() -> np.ndarray:
                k = partner_index(j, n, rng)
                dims = rng.choice(D, size=dim, replace=False)
                return abco_neighbor(snapshot[j], snapshot[k], dims, rng)
            return make

        # employed bees: one move per source
        snapshot = list(pop)

        def employed(i: int, tally: EvaluationBudget) -> Candidate:
            rng = ctx.rng(EMPLOYED, ite, i)
            return ctx.propose(neighbour_of(i, snapshot, rng), attempts, tally)

        for i, new in enumerate(ctx.parallel(employed, range(n))):
            if _improves(new, pop[i]):
                pop[i] = new.with_trial(0)
            else:
                pop[i] = pop[i].with_trial(pop[i].trial + 1)

        # onlooker bees: sources picked by roulette
        snapshot = list(pop)
        weights = roulette_weights(snapshot)

        def onlooker(o: int, tally: EvaluationBudget) -> tuple[int, Candidate]:
            rng = ctx.rng(ONLOOKER, ite, o)
            j = int(rng.choice(n, p=weights))
            return j, ctx.propose(neighbour_of(j, snapshot, rng), attempts, tally)

        winners: dict[int, Candidate] = {}
        for j, new in ctx.parallel(onlooker, range(n)):
            if _improves(new, pop[j]) and (j not in winners or new.better_than(winners[j])):
                winners[j] = new
        for j, new in winners.items():
            pop[j] = new.with_trial(0)

        # scouts: exhausted sources
        exhausted = [i for i in range(n) if pop[i].trial >= limit]
        if exhausted:
            snapshot = list(pop)
            top = snapshot[best_index(snapshot)]

            def scout(i: int, tally: EvaluationBudget) -> Candidate:
                rng = ctx.rng(SCOUT, ite, i)
                if not modified:
                    return ctx.evaluate(ctx.box.sample_uniform(rng), tally)

                def propose(make):
                    return ctx.propose(make, RETRY_FACTOR * params.max_count, tally)
                return abco_scout_replacement(snapshot[i], top, snapshot, rng, propose)

            for i, new in zip(exhausted, ctx.parallel(scout, exhausted)):
                # a modified colony keeps only survivors
                pop[i] = (new if new.feasible or not modified else pop[i]).with_trial(0)

        ctx.observe(pop)
    return ctx.result(pop, "MABCO" if modified else "SABCO")


def run_mabco(problem: Evaluator, params: AbcoParams, seed: int, map_fn=None) -> OptimizerResult:
    return _run_abco(problem, params, seed, True, map_fn)


def run_sabco(problem: Evaluator, params: AbcoParams, seed: int, map_fn=None) -> OptimizerResult:
    return _run_abco(problem, params, seed, False, map_fn)
