from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from evosize.algorithms import (
    ALGORITHMS,
    AbcoParams,
    GaParams,
    GwoParams,
    PsoParams,
    abco_scout_replacement,
    pick_leaders,
    roulette_weights,
    run_algorithm,
    run_standard_variant,
    select_fittest,
)
from evosize.core import Candidate, ContractError, spawn_rng_stream
from evosize.harness import benchmark_evaluator

SMALL = {
    "ABCO": lambda: AbcoParams(10, 30),
    "GA": lambda: GaParams(10, 30),
    "GWO": lambda: GwoParams(10, 30),
    "PSO": lambda: PsoParams(10, 30),
}


class Counting:
    """Wraps a problem and counts evaluate calls independently of the budget."""

    def __init__(self, inner):
        self.inner = inner
        self.space = inner.space
        self.calls = 0

    def evaluate(self, position):
        self.calls += 1
        return self.inner.evaluate(position)

    def derived_bounds(self):
        return self.inner.derived_bounds()


def _run(name, problem, seed=1, map_fn=None):
    return run_algorithm(name, problem, SMALL[ALGORITHMS[name][0].value](), seed, map_fn)


@pytest.mark.parametrize("name", list(ALGORITHMS))
def test_history_is_elitist_and_bounded_by_best(name):
    res = _run(name, benchmark_evaluator("rosenbrock", 4))
    series = res.best_series()
    assert len(res.history) == 30
    assert np.all(np.diff(series) <= 0)
    assert res.best.fitness <= series.min()
    assert res.best.fitness == series[-1]


@pytest.mark.parametrize("name", list(ALGORITHMS))
def test_budget_equals_call_count(name):
    problem = Counting(benchmark_evaluator("constrained_sphere", 3))
    res = _run(name, problem, seed=5)
    assert res.evaluations == problem.calls
    assert [h.evaluations for h in res.history] == sorted(h.evaluations for h in res.history)


@pytest.mark.parametrize("name", ["MABCO", "MGA", "MPSO", "MGWO"])
def test_modified_population_survives(name):
    problem = benchmark_evaluator("constrained_sphere", 3)
    res = _run(name, problem, seed=2)
    for member in res.population:
        ev = problem.evaluate(member.position)
        assert ev.feasible and ev.fitness == member.fitness
    assert res.best.feasible and res.best.position[0] >= 1.0


@pytest.mark.parametrize("name", list(ALGORITHMS))
def test_worker_scheduling_does_not_change_results(name):
    problem = benchmark_evaluator("constrained_sphere", 4)
    serial = _run(name, problem, seed=11)
    with ThreadPoolExecutor(4) as pool:
        threaded = _run(name, problem, seed=11, map_fn=pool.map)
    assert serial.best.position.tolist() == threaded.best.position.tolist()
    assert [h[:3] for h in serial.history] == [h[:3] for h in threaded.history]


@pytest.mark.parametrize("name", list(ALGORITHMS))
def test_same_seed_same_run_different_seed_differs(name):
    problem = benchmark_evaluator("sphere", 3)
    a, b, c = _run(name, problem, 4), _run(name, problem, 4), _run(name, problem, 5)
    assert a.best.position.tolist() == b.best.position.tolist()
    assert a.evaluations == b.evaluations
    assert a.best.position.tolist() != c.best.position.tolist()


def test_parameter_validation():
    with pytest.raises(ContractError):
        AbcoParams(1, 10)
    with pytest.raises(ContractError):
        AbcoParams(10, 10, limit_min=20, limit_max=15)
    with pytest.raises(ContractError):
        GaParams(10, 10, alpha_min=0.5, alpha_max=0.1)
    with pytest.raises(ContractError):
        GwoParams(2, 10)
    with pytest.raises(ContractError):
        PsoParams(10, 10, w_min=0.9, w_max=0.5)
    with pytest.raises(ContractError):
        PsoParams(10, 0)


def test_dispatch_rejects_unknown_name_and_wrong_params():
    problem = benchmark_evaluator("sphere", 2)
    with pytest.raises(ContractError):
        run_algorithm("MXYZ", problem, AbcoParams(5, 5), 0)
    with pytest.raises(ContractError):
        run_algorithm("MGA", problem, AbcoParams(5, 5), 0)
    with pytest.raises(ValueError):
        run_standard_variant("NOPE", problem, AbcoParams(5, 5), 0)


# selection helpers

def _cands(fits, feasible=True):
    return [Candidate([float(i)], f, feasible) for i, f in enumerate(fits)]


def test_select_fittest_keeps_smallest():
    pool = _cands([7.0, 3.0, 9.0, 1.0, 4.0, 8.0, 2.0, 6.0])
    kept = select_fittest(pool, 2)
    assert [c.fitness for c in kept] == [1.0, 2.0]


def test_select_fittest_prefers_feasible():
    pool = _cands([5.0, 6.0]) + _cands([0.1], feasible=False)
    assert [c.fitness for c in select_fittest(pool, 2)] == [5.0, 6.0]


def test_pick_leaders_order_and_ties():
    pop = _cands([4.0, 1.0, 3.0, 1.0, 2.0])
    a, b, d = pick_leaders(pop)
    assert [c.position[0] for c in (a, b, d)] == [1.0, 3.0, 4.0]


def test_roulette_weights():
    w = roulette_weights(_cands([0.0, 1.0, 3.0]))
    raw = np.array([1.0, 0.5, 0.25])
    assert np.allclose(w, raw / raw.sum())
    with pytest.raises(ContractError):
        roulette_weights(_cands([-1.0, 1.0]))


class ScriptedProposals:
    def __init__(self, fitness):
        self.fitness = list(fitness)
        self.made = []

    def __call__(self, make):
        x = make()
        self.made.append(x)
        return Candidate(x, self.fitness.pop(0), True, trial=7)


def test_scout_returns_better_child_with_reset_trial():
    pop = [Candidate([1.0, 2.0, 3.0, 4.0], 9.0, True, 20), Candidate([9.0, 8.0, 7.0, 6.0], 2.0, True)]
    propose = ScriptedProposals([5.0, 3.0])
    out = abco_scout_replacement(pop[0], pop[1], pop, spawn_rng_stream(0, 3), propose)
    assert out.fitness == 3.0 and out.trial == 0
    assert np.array_equal(out.position, propose.made[1])
    for child in propose.made:
        assert all(c in (a, b) for c, a, b in zip(child, pop[0].position, pop[1].position))


def test_scout_identical_parents_gives_that_vector():
    same = Candidate([1.0, 2.0, 3.0], 4.0, True, 30)
    pop = [same, Candidate([5.0, 5.0, 5.0], 1.0, True)]
    propose = ScriptedProposals([1.0, 2.0])
    out = abco_scout_replacement(same, same, pop, spawn_rng_stream(1, 3), propose)
    assert propose.made[0].tolist() == [1.0, 2.0, 3.0]
    assert out.position.tolist() == [1.0, 2.0, 3.0]


def test_scout_needs_two_sources():
    c = Candidate([1.0], 1.0, True)
    with pytest.raises(ContractError):
        abco_scout_replacement(c, c, [c], spawn_rng_stream(0, 0), ScriptedProposals([1.0]))


# standard variants

@pytest.mark.parametrize("family", ["ABCO", "GA", "GWO", "PSO"])
def test_standard_variants_start_inside_box(family):
    problem = benchmark_evaluator("sphere", 3)
    params = SMALL[family]()
    res = run_standard_variant(family, problem, params, 3)
    for member in res.population:
        assert problem.space.contains(member.position)


def test_standard_gwo_spends_one_evaluation_per_agent():
    problem = benchmark_evaluator("constrained_sphere", 3)
    res = run_standard_variant("GWO", problem, GwoParams(10, 30), 0)
    init = res.history[0].evaluations - 10
    assert res.evaluations == init + 10 * 30

