"""Per-iteration parameter schedules.  All are monotone non-increasing."""

from __future__ import annotations

import math

from ..core import ContractError


def _check_range(ite: int, ite_max: int) -> None:
    if ite_max < 1 or not 1 <= ite <= ite_max:
        raise ContractError(f"iteration {ite} outside 1..{ite_max}")


def abco_limit_schedule(ite: int, ite_max: int, limit_min: int, limit_max: int) -> int:
    """Exhaustion limit, truncated toward zero."""
    _check_range(ite, ite_max)
    if not 0 < limit_min <= limit_max:
        raise ContractError("need 0 < limit_min <= limit_max")
    raw = round(limit_min + (1.0 - ite / ite_max) * (limit_max - limit_min), 9)
    return int(math.floor(raw))


def abco_dim_schedule(ite: int, ite_max: int, D: int) -> int:
    """How many coordinates a neighbour move perturbs (ceiling, at least one)."""
    _check_range(ite, ite_max)
    if D < 1:
        raise ContractError("dimension must be at least 1")
    # snap float noise so exact integers are not pushed across a ceiling/floor
    raw = round(D * (1.0 - ite / ite_max), 9)
    return max(int(math.ceil(raw)), 1)


def ga_alpha_schedule(gen: int, gen_max: int, alpha_min: float, alpha_max: float) -> float:
    _check_range(gen, gen_max)
    if not 0 < alpha_min <= alpha_max:
        raise ContractError("need 0 < alpha_min <= alpha_max")
    return alpha_min + (1.0 - gen / gen_max) * (alpha_max - alpha_min)


def _ramp(ite: int, ite_max: int, start: float, end: float) -> float:
    """Linear from ``start`` at ite=1 to ``end`` at ite=ite_max."""
    _check_range(ite, ite_max)
    if ite == ite_max:
        return end
    if ite == 1:
        return start
    return start + (ite - 1) / (ite_max - 1) * (end - start)


def pso_inertia_schedule(ite: int, ite_max: int, w_min: float, w_max: float) -> float:
    if not 0 <= w_min <= w_max:
        raise ContractError("need 0 <= w_min <= w_max")
    return _ramp(ite, ite_max, w_max, w_min)


def gwo_a_schedule(ite: int, ite_max: int) -> float:
    """GWO's ``a``: 2 at the first iteration, 0 at the last."""
    return _ramp(ite, ite_max, 2.0, 0.0)
