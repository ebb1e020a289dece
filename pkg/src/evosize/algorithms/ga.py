"""Real-coded genetic algorithm with a shrinking mutation window."""

from __future__ import annotations

import numpy as np

from ..core import Candidate, EvaluationBudget, Evaluator, SearchStarvationError, ranked
from .engine import OFFSPRING, OptimizerResult, SearchContext, two_distinct
from .operators import random_crossover_point, random_mutation, single_point_crossover
from .params import GaParams
from .schedules import ga_alpha_schedule


def select_fittest(pool: list[Candidate], n: int) -> list[Candidate]:
    """The ``n`` best of ``pool``; earlier entries win ties."""
    return [pool[i] for i in ranked(pool)[:n]]


def _run_ga(problem: Evaluator, params: GaParams, seed: int, modified: bool,
            map_fn=None) -> OptimizerResult:
    ctx = SearchContext(problem, seed, modified, map_fn)
    n, D = params.population, ctx.dimension
    attempts = params.max_retries if modified else 1
    pop = ctx.initial_population(n, params.init_attempts)

    for gen in range(1, params.gen_max + 1):
        alpha = ga_alpha_schedule(gen, params.gen_max, params.alpha_min, params.alpha_max) if modified else None
        parents = list(pop)

        def survivor(make, what: str, slot: int, tally: EvaluationBudget) -> Candidate:
            cand = ctx.propose(make, attempts, tally)
            if modified and not cand.feasible:
                raise SearchStarvationError(
                    f"generation {gen}, slot {slot}: no surviving {what} offspring in {attempts} attempts")
            return cand

        def breed(i: int, tally: EvaluationBudget) -> tuple[Candidate, Candidate, Candidate]:
            rng = ctx.rng(OFFSPRING, gen, i)

            def crossed() -> np.ndarray:
                p, q = two_distinct(n, rng)
                return single_point_crossover(parents[p], parents[q], random_crossover_point(D, rng))

            xc = survivor(crossed, "crossover", i, tally)
            xcm = survivor(lambda: random_mutation(xc.position, ctx.box, rng, alpha), "mutated crossover", i, tally)

            def mutated_parent() -> np.ndarray:
                return random_mutation(parents[int(rng.integers(0, n))].position, ctx.box, rng, alpha)

            xpm = survivor(mutated_parent, "mutated parent", i, tally)
            return xc, xcm, xpm

        kids = ctx.parallel(breed, range(n))
        pool = parents + [k[0] for k in kids] + [k[1] for k in kids] + [k[2] for k in kids]
        pop = select_fittest(pool, n)
        ctx.observe(pop)
    return ctx.result(pop, "MGA" if modified else "SGA")


def run_mga(problem: Evaluator, params: GaParams, seed: int, map_fn=None) -> OptimizerResult:
    return _run_ga(problem, params, seed, True, map_fn)


def run_sga(problem: Evaluator, params: GaParams, seed: int, map_fn=None) -> OptimizerResult:
    return _run_ga(problem, params, seed, False, map_fn)
