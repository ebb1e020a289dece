import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from evosize.algorithms import (
    abco_neighbor,
    ga_mutation_bounds,
    gwo_coefficients,
    gwo_coefficients_from,
    gwo_position_update,
    pso_step,
    pso_update,
    random_mutation,
    single_point_crossover,
)
from evosize.core import Bounds, ContractError, spawn_rng_stream
from oracles import gwo_update_scalar, pso_update_scalar


class FixedDraws:
    """Generator stand-in that replays queued values."""

    def __init__(self, values):
        self.values = list(values)

    def _take(self, size):
        n = 1 if size is None else int(size)
        out, self.values = self.values[:n], self.values[n:]
        return out[0] if size is None else np.array(out, dtype=float)

    def uniform(self, low=0.0, high=1.0, size=None):
        return self._take(size)

    def random(self, size=None):
        return self._take(size)


# bee colony neighbour

def test_neighbor_equal_parents_is_identity():
    v = abco_neighbor([3.0, 7.0], [3.0, 7.0], [0, 1], FixedDraws([0.9, -0.4]))
    assert v.tolist() == [3.0, 7.0]


def test_neighbor_single_dimension():
    assert abco_neighbor([4.0], [2.0], [0], FixedDraws([0.5])).tolist() == [5.0]


def test_neighbor_leaves_other_dimensions():
    assert abco_neighbor([4.0, 8.0], [2.0, 6.0], [1], FixedDraws([-1.0])).tolist() == [4.0, 6.0]


def test_neighbor_rejects_empty_and_out_of_range_dims():
    rng = spawn_rng_stream(0, 0)
    with pytest.raises(ContractError):
        abco_neighbor([1.0, 2.0], [0.0, 0.0], [], rng)
    with pytest.raises(ContractError):
        abco_neighbor([1.0, 2.0], [0.0, 0.0], [2], rng)


@given(st.integers(0, 10**6))
def test_neighbor_stays_within_partner_reflection(seed):
    rng = spawn_rng_stream(seed, 0)
    xi, xk = rng.uniform(-5, 5, 6), rng.uniform(-5, 5, 6)
    dims = rng.choice(6, size=int(rng.integers(1, 7)), replace=False)
    v = abco_neighbor(xi, xk, dims, rng)
    spread = np.abs(xi - xk)
    assert np.all(np.abs(v - xi) <= spread + 1e-12)
    untouched = np.setdiff1d(np.arange(6), dims)
    assert np.array_equal(v[untouched], xi[untouched])


# crossover

def test_crossover_example():
    assert single_point_crossover([1, 2, 3, 4], [9, 8, 7, 6], 2).tolist() == [1, 2, 7, 6]


def test_crossover_identical_parents():
    for point in range(5):
        assert single_point_crossover([1, 2, 3, 4], [1, 2, 3, 4], point).tolist() == [1, 2, 3, 4]


def test_crossover_point_range():
    with pytest.raises(ContractError):
        single_point_crossover([1, 2], [3, 4], 3)


@given(st.lists(st.floats(-1e3, 1e3), min_size=1, max_size=10), st.data())
def test_crossover_takes_each_gene_from_a_parent(p1, data):
    p2 = data.draw(st.lists(st.floats(-1e3, 1e3), min_size=len(p1), max_size=len(p1)))
    point = data.draw(st.integers(0, len(p1)))
    child = single_point_crossover(p1, p2, point)
    assert all(c in (a, b) for c, a, b in zip(child, p1, p2))
    assert child.tolist() == p1[:point] + p2[point:]


# mutation window

def test_mutation_bounds_examples():
    assert ga_mutation_bounds(100.0, 0.1, 200.0, 2.0) == pytest.approx((110.0, 90.0))
    assert ga_mutation_bounds(100.0, 1.5, 200.0, 2.0) == (200.0, 2.0)
    hi, lo = ga_mutation_bounds(100.0, 1e-15, 200.0, 2.0)
    assert hi == pytest.approx(100.0) and lo == pytest.approx(100.0)


def test_mutation_bounds_preconditions():
    with pytest.raises(ContractError):
        ga_mutation_bounds(1.0, 0.0, 2.0, 0.0)
    with pytest.raises(ContractError):
        ga_mutation_bounds(1.0, 0.1, 0.0, 2.0)


@given(st.floats(-100, 100), st.floats(1e-6, 3.0))
def test_mutation_window_ordered_inside_box(x, alpha):
    hi, lo = ga_mutation_bounds(x, alpha, 100.0, -100.0)
    assert -100.0 <= lo <= x <= hi <= 100.0


def test_mutation_at_last_generation_stays_in_alpha_min_window():
    box = Bounds([1e-7] * 6, [1e-5] * 6)
    x = np.full(6, 2e-6)
    amin = 0.001
    for s in range(200):
        y = random_mutation(x, box, spawn_rng_stream(s, 0), amin)
        assert np.all(np.abs(y - x) <= amin * x * (1 + 1e-12))
        assert np.any(y != x)


def test_mutation_without_window_covers_box():
    box = Bounds([0.0] * 3, [1.0] * 3)
    ys = np.array([random_mutation([0.5] * 3, box, spawn_rng_stream(s, 1)) for s in range(300)])
    assert box.contains(ys.min(axis=0)) and box.contains(ys.max(axis=0))
    assert ys.min() < 0.1 and ys.max() > 0.9


# grey wolf

def test_gwo_coefficient_examples():
    assert gwo_coefficients_from(2.0, 0.5, 0.5) == (0.0, 1.0)
    assert gwo_coefficients_from(0.0, 0.77, 0.3)[0] == 0.0
    assert gwo_coefficients_from(1.3, 0.2, 1.0)[1] == 2.0


def test_gwo_coefficients_range():
    rng = spawn_rng_stream(3, 3)
    for a in (0.0, 0.5, 2.0):
        A, C = gwo_coefficients(a, rng, 1000)
        assert np.all(np.abs(A) <= a) and np.all((C >= 0) & (C <= 2))
    with pytest.raises(ContractError):
        gwo_coefficients(2.5, rng)


def test_gwo_fixed_point_when_agents_coincide():
    # a = 0 forces A = 0
    x = np.array([0.3, -1.2, 4.0])
    assert np.allclose(gwo_position_update(x, x, x, x, 0.0, spawn_rng_stream(1, 1)), x)


def test_gwo_hand_example():
    rng = FixedDraws([0.5] * 6)
    out = gwo_position_update([0.0], [1.0], [2.0], [3.0], 2.0, rng)
    assert out.tolist() == [2.0]
    assert gwo_update_scalar([0.0], [[1.0], [2.0], [3.0]], 2.0, [[0.5]] * 3, [[0.5]] * 3) == [2.0]


def test_gwo_zero_a_moves_to_scaled_leader_mean():
    # with A = 0 each leader term is the leader itself
    x = np.array([5.0, -5.0])
    la, lb, ld = np.array([1.0, 2.0]), np.array([3.0, 4.0]), np.array([-1.0, 0.0])
    out = gwo_position_update(x, la, lb, ld, 0.0, spawn_rng_stream(9, 9))
    assert np.allclose(out, (la + lb + ld) / 3)


def _replay_gwo(seed, D):
    """Draws in the operator's order: per leader a vector of r1 then of r2."""
    rng = spawn_rng_stream(seed, 99)
    r1, r2 = [], []
    for _ in range(3):
        r1.append(rng.random(D).tolist())
        r2.append(rng.random(D).tolist())
    return r1, r2


@given(st.integers(0, 2**31), st.integers(1, 8), st.floats(0.0, 2.0))
def test_gwo_matches_scalar_oracle(seed, D, a):
    gen = np.random.default_rng(seed)
    x, la, lb, ld = (gen.uniform(-10, 10, D) for _ in range(4))
    got = gwo_position_update(x, la, lb, ld, a, spawn_rng_stream(seed, 99))
    r1, r2 = _replay_gwo(seed, D)
    want = gwo_update_scalar(x.tolist(), [la.tolist(), lb.tolist(), ld.tolist()], a, r1, r2)
    assert np.allclose(got, want, rtol=1e-12, atol=1e-12)


def test_gwo_dimension_mismatch():
    with pytest.raises(ContractError):
        gwo_position_update([0.0], [1.0, 2.0], [1.0], [1.0], 1.0, spawn_rng_stream(0, 0))


# particle swarm

def test_pso_stationary_particle():
    for w in (0.0, 0.5, 0.8, 1.0):
        x, v = pso_update([1.0, 2.0], [0.0, 0.0], [1.0, 2.0], [1.0, 2.0], w, 1.7, 1.7, spawn_rng_stream(0, 6))
        assert x.tolist() == [1.0, 2.0] and v.tolist() == [0.0, 0.0]


def test_pso_hand_example():
    x, v = pso_step([0.0], [1.0], [2.0], [4.0], 0.5, 1.7, 1.7, [0.5], [0.5])
    assert v[0] == pytest.approx(5.6) and x[0] == pytest.approx(5.6)
    ox, ov = pso_update_scalar([0.0], [1.0], [2.0], [4.0], 0.5, 1.7, 1.7, [0.5], [0.5])
    assert ox == pytest.approx([5.6]) and ov == pytest.approx([5.6])


@given(st.integers(0, 2**31), st.integers(1, 8), st.floats(0.0, 1.0))
def test_pso_matches_scalar_oracle(seed, D, w):
    gen = np.random.default_rng(seed)
    x, v, pb, gb = (gen.uniform(-10, 10, D) for _ in range(4))
    got_x, got_v = pso_update(x, v, pb, gb, w, 1.7, 1.7, spawn_rng_stream(seed, 6))
    replay = spawn_rng_stream(seed, 6)
    r1, r2 = replay.random(D), replay.random(D)
    want_x, want_v = pso_update_scalar(x.tolist(), v.tolist(), pb.tolist(), gb.tolist(), w, 1.7, 1.7,
                                       r1.tolist(), r2.tolist())
    assert np.allclose(got_x, want_x, rtol=1e-12, atol=1e-12)
    assert np.allclose(got_v, want_v, rtol=1e-12, atol=1e-12)
