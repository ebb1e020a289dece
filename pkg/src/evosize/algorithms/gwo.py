"""Grey wolf optimizer with survivability retries."""

from __future__ import annotations

from ..core import Candidate, EvaluationBudget, Evaluator, ranked
from .engine import AGENT, OptimizerResult, SearchContext
from .operators import gwo_position_update
from .params import GwoParams
from .schedules import gwo_a_schedule


def pick_leaders(population: list[Candidate]) -> tuple[Candidate, Candidate, Candidate]:
    """Alpha, beta and delta: the three best, ties to the lower index."""
    order = ranked(population)
    return population[order[0]], population[order[1]], population[order[2]]


def _run_gwo(problem: Evaluator, params: GwoParams, seed: int, modified: bool,
             map_fn=None) -> OptimizerResult:
    ctx = SearchContext(problem, seed, modified, map_fn)
    n = params.population
    attempts = params.max_count if modified else 1
    pop = ctx.initial_population(n, params.init_attempts)
    # leaders persist across iterations until something beats them
    leaders = list(pick_leaders(pop))
    corner: Candidate | None = None

    for ite in range(1, params.max_ite + 1):
        a = gwo_a_schedule(ite, params.max_ite)
        leaders = list(pick_leaders(leaders + pop))
        xa, xb, xd = (c.position for c in leaders)
        snapshot = list(pop)

        def move(i: int, tally: EvaluationBudget) -> Candidate | None:
            rng = ctx.rng(AGENT, ite, i)
            x = snapshot[i].position
            cand = ctx.propose(lambda: gwo_position_update(x, xa, xb, xd, a, rng), attempts, tally)
            # None marks an exhausted modified agent
            return cand if cand.feasible or not modified else None

        for i, new in enumerate(ctx.parallel(move, range(n))):
            if new is None:
                if corner is None:
                    # the box's upper corner is evaluated once per run
                    corner = ctx.evaluate(ctx.box.upper.copy(), ctx.budget)
                new = corner
            pop[i] = new
        ctx.observe(pop, leaders)
    return ctx.result(pop, "MGWO" if modified else "SGWO")


def run_mgwo(problem: Evaluator, params: GwoParams, seed: int, map_fn=None) -> OptimizerResult:
    return _run_gwo(problem, params, seed, True, map_fn)


def run_sgwo(problem: Evaluator, params: GwoParams, seed: int, map_fn=None) -> OptimizerResult:
    return _run_gwo(problem, params, seed, False, map_fn)
