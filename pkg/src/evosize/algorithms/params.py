"""Hyper-parameter records for the four optimizer families."""

from __future__ import annotations

from dataclasses import dataclass

from ..core import ContractError

DEFAULT_INIT_ATTEMPTS = 20_000


def _positive(obj, *names: str) -> None:
    for name in names:
        value = getattr(obj, name)
        if not (isinstance(value, int) and value > 0):
            raise ContractError(f"{name} must be a positive integer, got {value!r}")


@dataclass(frozen=True)
class AbcoParams:
    population: int
    max_ite: int
    limit_min: int = 5
    limit_max: int = 15
    max_count: int = 10
    init_attempts: int = DEFAULT_INIT_ATTEMPTS

    def __post_init__(self) -> None:
        _positive(self, "population", "max_ite", "limit_min", "limit_max", "max_count", "init_attempts")
        if self.limit_min > self.limit_max:
            raise ContractError("limit_min must not exceed limit_max")
        if self.population < 2:
            raise ContractError("the neighbour move needs a partner: population >= 2")


@dataclass(frozen=True)
class GaParams:
    population: int
    gen_max: int
    alpha_min: float = 0.001
    alpha_max: float = 0.05
    # cap on attempts per offspring before the run aborts
    max_retries: int = 5000
    init_attempts: int = DEFAULT_INIT_ATTEMPTS

    def __post_init__(self) -> None:
        _positive(self, "population", "gen_max", "max_retries", "init_attempts")
        if not 0 < self.alpha_min <= self.alpha_max:
            raise ContractError("need 0 < alpha_min <= alpha_max")
        if self.population < 2:
            raise ContractError("crossover needs two parents: population >= 2")


@dataclass(frozen=True)
class GwoParams:
    population: int
    max_ite: int
    # agents that exhaust their retries are parked on the box corner, so a
    # generous cap keeps more of the pack inside the feasible region
    max_count: int = 30
    init_attempts: int = DEFAULT_INIT_ATTEMPTS

    def __post_init__(self) -> None:
        _positive(self, "population", "max_ite", "max_count", "init_attempts")
        if self.population < 3:
            raise ContractError("three leaders are required: population >= 3")


@dataclass(frozen=True)
class PsoParams:
    population: int
    max_ite: int
    w_min: float = 0.5
    w_max: float = 0.8
    c1: float = 1.7
    c2: float = 1.7
    max_count: int = 10
    regenerate_on_failure: bool = True
    init_attempts: int = DEFAULT_INIT_ATTEMPTS

    def __post_init__(self) -> None:
        _positive(self, "population", "max_ite", "max_count", "init_attempts")
        if not 0 <= self.w_min <= self.w_max:
            raise ContractError("need 0 <= w_min <= w_max")
        if self.c1 < 0 or self.c2 < 0:
            raise ContractError("acceleration coefficients must be non-negative")
