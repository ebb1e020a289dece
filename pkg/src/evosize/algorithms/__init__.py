"""The four population-based optimizers and their standard baselines."""

from __future__ import annotations

import enum

from ..core import ContractError, Evaluator
from .abco import abco_scout_replacement, roulette_weights, run_mabco, run_sabco
from .engine import IterationRecord, OptimizerResult, SearchContext
from .ga import run_mga, run_sga, select_fittest
from .gwo import pick_leaders, run_mgwo, run_sgwo
from .operators import (
    abco_neighbor,
    ga_mutation_bounds,
    gwo_coefficients,
    gwo_coefficients_from,
    gwo_position_update,
    pso_step,
    pso_update,
    random_crossover_point,
    random_mutation,
    single_point_crossover,
)
from .params import AbcoParams, GaParams, GwoParams, PsoParams
from .pso import run_mpso, run_spso
from .schedules import (
    abco_dim_schedule,
    abco_limit_schedule,
    ga_alpha_schedule,
    gwo_a_schedule,
    pso_inertia_schedule,
)


class Family(str, enum.Enum):
    ABCO = "ABCO"
    GA = "GA"
    GWO = "GWO"
    PSO = "PSO"


PARAMS = {Family.ABCO: AbcoParams, Family.GA: GaParams, Family.GWO: GwoParams, Family.PSO: PsoParams}
_MODIFIED = {Family.ABCO: run_mabco, Family.GA: run_mga, Family.GWO: run_mgwo, Family.PSO: run_mpso}
_STANDARD = {Family.ABCO: run_sabco, Family.GA: run_sga, Family.GWO: run_sgwo, Family.PSO: run_spso}

# algorithm name -> (family, modified?)
ALGORITHMS = {f"{prefix}{fam.value}": (fam, prefix == "M") for fam in Family for prefix in ("M", "S")}


def _check_params(family: Family, params) -> None:
    if not isinstance(params, PARAMS[family]):
        raise ContractError(f"{family.value} needs {PARAMS[family].__name__}, got {type(params).__name__}")


def run_standard_variant(algorithm: Family | str, problem: Evaluator, params, seed: int,
                         map_fn=None) -> OptimizerResult:
    """Run the baseline of ``algorithm`` (ABCO, GA, GWO or PSO)."""
    family = Family(algorithm)
    _check_params(family, params)
    return _STANDARD[family](problem, params, seed, map_fn)


def run_algorithm(name: str, problem: Evaluator, params, seed: int, map_fn=None) -> OptimizerResult:
    """Dispatch by name: MABCO, MGA, MGWO, MPSO, SABCO, SGA, SGWO or SPSO."""
    try:
        family, modified = ALGORITHMS[name.upper()]
    except KeyError:
        raise ContractError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}") from None
    _check_params(family, params)
    runner = _MODIFIED[family] if modified else _STANDARD[family]
    return runner(problem, params, seed, map_fn)
