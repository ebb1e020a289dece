"""Particle swarm with a linearly decreasing inertia weight."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import Candidate, EvaluationBudget, Evaluator, best_index
from .engine import PARTICLE, REGENERATE, OptimizerResult, SearchContext
from .operators import pso_update
from .params import PsoParams
from .schedules import pso_inertia_schedule


@dataclass(frozen=True)
class Particle:
    current: Candidate
    velocity: np.ndarray
    pbest: Candidate


def _run_pso(problem: Evaluator, params: PsoParams, seed: int, modified: bool,
             map_fn=None) -> OptimizerResult:
    ctx = SearchContext(problem, seed, modified, map_fn)
    n, D = params.population, ctx.dimension
    attempts = params.max_count if modified else 1
    swarm = [Particle(c, np.zeros(D), c) for c in ctx.initial_population(n, params.init_attempts)]
    gbest = swarm[best_index([p.pbest for p in swarm])].pbest

    for ite in range(1, params.max_ite + 1):
        # the standard swarm keeps the initial inertia throughout
        w = pso_inertia_schedule(ite, params.max_ite, params.w_min, params.w_max) if modified else params.w_max
        snapshot, g = list(swarm), gbest.position

        def fly(i: int, tally: EvaluationBudget) -> Particle:
            rng = ctx.rng(PARTICLE, ite, i)
            p = snapshot[i]
            velocity = p.velocity

            def make() -> np.ndarray:
                nonlocal velocity
                x, velocity = pso_update(p.current.position, p.velocity, p.pbest.position, g,
                                         w, params.c1, params.c2, rng)
                return x

            cand = ctx.propose(make, attempts, tally)
            if modified and not cand.feasible:
                if not params.regenerate_on_failure:
                    return Particle(p.current, np.zeros(D), p.pbest)
                regen = ctx.rng(REGENERATE, ite, i)
                cand = ctx.propose(lambda: ctx.bounds.sample_uniform(regen), params.max_count, tally)
                velocity = np.zeros(D)
                if not cand.feasible:
                    # no surviving fresh point within the cap: restart from the personal best
                    return Particle(p.pbest, velocity, p.pbest)
            # a regenerated particle keeps its personal-best memory
            pbest = cand if cand.feasible and cand.better_than(p.pbest) else p.pbest
            return Particle(cand, velocity, pbest)

        swarm = ctx.parallel(fly, range(n))
        top = swarm[best_index([p.pbest for p in swarm])].pbest
        if top.better_than(gbest):
            gbest = top
        ctx.observe([p.current for p in swarm], [gbest])
    return ctx.result([p.current for p in swarm], "MPSO" if modified else "SPSO")


def run_mpso(problem: Evaluator, params: PsoParams, seed: int, map_fn=None) -> OptimizerResult:
    return _run_pso(problem, params, seed, True, map_fn)


def run_spso(problem: Evaluator, params: PsoParams, seed: int, map_fn=None) -> OptimizerResult:
    return _run_pso(problem, params, seed, False, map_fn)
