"""Variation operators shared by the optimizers.

Functions that consume randomness take any object with numpy ``Generator``
methods, so tests can feed fixed draws through a stub.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..core import Bounds, Candidate, ContractError


def _vec(x: Candidate | Sequence[float] | np.ndarray) -> np.ndarray:
    if isinstance(x, Candidate):
        return x.position
    return np.asarray(x, dtype=float)


def _same_dim(*vectors: np.ndarray) -> None:
    if len({v.shape for v in vectors}) != 1:
        raise ContractError("vectors must share one dimension")


# ---- bee colony ------------------------------------------------------------

def abco_neighbor(x_i, x_k, dims: Sequence[int], rng) -> np.ndarray:
    """Move ``x_i`` relative to partner ``x_k`` along the coordinates in ``dims``."""
    xi, xk = _vec(x_i), _vec(x_k)
    _same_dim(xi, xk)
    idx = np.asarray(dims, dtype=int).reshape(-1)
    if idx.size == 0:
        raise ContractError("dims must not be empty")
    if np.any(idx < 0) or np.any(idx >= xi.size):
        raise ContractError(f"dims {idx.tolist()} out of range for dimension {xi.size}")
    u = np.asarray(rng.uniform(-1.0, 1.0, idx.size), dtype=float)
    v = xi.copy()
    v[idx] = xi[idx] + u * (xi[idx] - xk[idx])
    return v


# ---- crossover / mutation ---------------------------------------------------

def single_point_crossover(a, b, point: int) -> np.ndarray:
    """Genes before ``point`` from ``a``, the rest from ``b``."""
    va, vb = _vec(a), _vec(b)
    _same_dim(va, vb)
    if not 0 <= point <= va.size:
        raise ContractError(f"crossover point {point} outside 0..{va.size}")
    return np.concatenate([va[:point], vb[point:]])


def random_crossover_point(D: int, rng) -> int:
    # interior points only, so both parents contribute when D >= 2
    if D < 2:
        return int(rng.integers(0, 2))
    return int(rng.integers(1, D))


def ga_mutation_bounds(x_j, alpha: float, UB, LB):
    """Mutation window ``(upper, lower)`` around gene value ``x_j``.

    The half-width is ``alpha * |x_j|`` so the window stays ordered for
    negative genes too; for positive genes this is ``x_j * (1 +/- alpha)``.
    """
    if not alpha > 0:
        raise ContractError("alpha must be positive")
    x = np.asarray(x_j, dtype=float)
    ub, lb = np.asarray(UB, dtype=float), np.asarray(LB, dtype=float)
    if np.any(lb >= ub):
        raise ContractError("need LB < UB")
    half = alpha * np.abs(x)
    upper, lower = np.minimum(ub, x + half), np.maximum(lb, x - half)
    if upper.ndim == 0:
        return float(upper), float(lower)
    return upper, lower


def random_mutation(x, box: Bounds, rng, alpha: float | None = None) -> np.ndarray:
    """Redraw a random number of randomly chosen genes.

    With ``alpha`` the new value comes from the shrinking window around the
    old one; without it, from the whole box.
    """
    v = _vec(x).copy()
    D = v.size
    count = int(rng.integers(1, D + 1))
    genes = np.sort(rng.choice(D, size=count, replace=False))
    if alpha is None:
        hi, lo = box.upper[genes], box.lower[genes]
    else:
        hi, lo = ga_mutation_bounds(v[genes], alpha, box.upper[genes], box.lower[genes])
    v[genes] = rng.uniform(lo, hi)
    return v


# ---- grey wolf --------------------------------------------------------------

def gwo_coefficients_from(a: float, r1, r2):
    """``A = 2 a r1 - a`` and ``C = 2 r2`` for given uniform draws."""
    r1, r2 = np.asarray(r1, dtype=float), np.asarray(r2, dtype=float)
    A, C = 2.0 * a * r1 - a, 2.0 * r2
    if A.ndim == 0:
        return float(A), float(C)
    return A, C


def gwo_coefficients(a: float, rng, size: int | None = None):
    if not 0.0 <= a <= 2.0:
        raise ContractError(f"a must lie in [0, 2], got {a}")
    r1 = rng.random(size)
    r2 = rng.random(size)
    return gwo_coefficients_from(a, r1, r2)


def gwo_position_update(x, x_alpha, x_beta, x_delta, a: float, rng) -> np.ndarray:
    """Average of the three leader-guided moves.

    Draw order: for alpha, beta, delta in turn, a vector of ``r1`` then a
    vector of ``r2`` (one value per dimension).
    """
    xs = [_vec(v) for v in (x, x_alpha, x_beta, x_delta)]
    _same_dim(*xs)
    x0 = xs[0]
    total = np.zeros_like(x0)
    for leader in xs[1:]:
        A, C = gwo_coefficients(a, rng, x0.size)
        d = np.abs(C * leader - x0)
        total += leader - A * d
    return total / 3.0


# ---- particle swarm -----------------------------------------------------------

def pso_step(x, v, pbest, gbest, w: float, c1: float, c2: float, r1, r2) -> tuple[np.ndarray, np.ndarray]:
    xs = [_vec(u) for u in (x, v, pbest, gbest)]
    _same_dim(*xs)
    x0, v0, pb, gb = xs
    v_new = w * v0 + c1 * np.asarray(r1) * (pb - x0) + c2 * np.asarray(r2) * (gb - x0)
    return x0 + v_new, v_new


def pso_update(x, v, pbest, gbest, w: float, c1: float, c2: float, rng) -> tuple[np.ndarray, np.ndarray]:
    """Velocity then position update with fresh per-dimension ``r1`` and ``r2``."""
    D = _vec(x).size
    r1 = rng.random(D)
    r2 = rng.random(D)
    return pso_step(x, v, pbest, gbest, w, c1, c2, r1, r2)
