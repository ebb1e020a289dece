"""Multi-seed experiments: configuration, execution and aggregation."""

from __future__ import annotations

import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Mapping, NamedTuple, Sequence

import numpy as np

from ..algorithms import ALGORITHMS, PARAMS, run_algorithm
from ..circuit import PRESETS, CircuitProblem, load_preset, load_problem_file
from ..core import ContractError, Evaluator, spawn_rng_stream
from .benchmarks import BENCHMARKS, ConfigError, benchmark_evaluator

DEFAULT_CHECKPOINTS = (100, 200, 300)
# second positional field of each parameter record
_ITERATION_FIELD = {"ABCO": "max_ite", "GA": "gen_max", "GWO": "max_ite", "PSO": "max_ite"}


@dataclass(frozen=True)
class ExperimentConfig:
    algorithm: str
    problem: str = "two_stage_65n"
    backend: str = "analytic"
    population: int = 20
    iterations: int = 200
    runs: int = 10
    master_seed: int = 0
    workers: int = 1
    params: Mapping[str, Any] = field(default_factory=dict)
    checkpoints: tuple[int, ...] = DEFAULT_CHECKPOINTS
    dimension: int = 6
    simulator: str | None = None
    model_path: str = "models.lib"
    timeout: float = 60.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "algorithm", str(self.algorithm).upper())
        object.__setattr__(self, "checkpoints", tuple(int(c) for c in self.checkpoints))
        object.__setattr__(self, "params", dict(self.params))
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(f"unknown algorithm {self.algorithm!r}; choose from {', '.join(ALGORITHMS)}")
        for name in ("population", "iterations", "runs", "workers", "dimension"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ConfigError(f"{name} must be a positive integer, got {value!r}")
        if not isinstance(self.master_seed, int) or self.master_seed < 0:
            raise ConfigError("master_seed must be a non-negative integer")
        if any(c < 1 for c in self.checkpoints):
            raise ConfigError("checkpoints must be positive iteration numbers")
        kind = self.backend.split(":", 1)[0]
        if kind not in ("analytic", "simulator", "benchmark"):
            raise ConfigError(f"backend must be analytic, simulator or benchmark:NAME, got {self.backend!r}")
        if kind == "benchmark" and self.backend.partition(":")[2] not in BENCHMARKS:
            raise ConfigError(f"unknown benchmark in {self.backend!r}; choose from {', '.join(BENCHMARKS)}")
        if not self.timeout > 0:
            raise ConfigError("simulator timeout must be positive")

    @property
    def family(self) -> str:
        return ALGORITHMS[self.algorithm][0].value

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown configuration keys {sorted(unknown)}")
        if "algorithm" not in data:
            raise ConfigError("configuration needs an 'algorithm'")
        try:
            return cls(**data)
        except TypeError as exc:
            raise ConfigError(str(exc)) from None

    def to_mapping(self) -> dict[str, Any]:
        out = asdict(self)
        out["checkpoints"] = list(self.checkpoints)
        return out


def load_config(path: str | Path) -> ExperimentConfig:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read configuration {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must hold a JSON object")
    return ExperimentConfig.from_mapping(data)


def build_problem(config: ExperimentConfig) -> Evaluator:
    """The evaluator named by ``config``; raises ConfigError when unavailable."""
    kind, _, name = config.backend.partition(":")
    if kind == "benchmark":
        return benchmark_evaluator(name, config.dimension)
    try:
        if config.problem in PRESETS:
            spec, tech = load_preset(config.problem)
        else:
            spec, tech = load_problem_file(config.problem)
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot load problem {config.problem!r}: {exc}") from None
    if kind == "analytic":
        return CircuitProblem(spec, tech)
    from ..spice_adapter import SimulatorConfig, resolve_executable, simulator_problem

    exe = resolve_executable(config.simulator)
    if exe is None:
        raise ConfigError("simulator backend requested but no simulator executable was found")
    return simulator_problem(spec, tech, SimulatorConfig(exe, config.model_path, config.timeout))


def build_params(config: ExperimentConfig):
    family = ALGORITHMS[config.algorithm][0]
    kwargs = {"population": config.population, _ITERATION_FIELD[family.value]: config.iterations}
    kwargs.update(config.params)
    try:
        return PARAMS[family](**kwargs)
    except (TypeError, ContractError) as exc:
        raise ConfigError(f"bad {family.value} parameters: {exc}") from None


def run_seed(master_seed: int, run: int) -> int:
    """Seed of run ``run``, drawn from its own stream of the master seed."""
    return int(spawn_rng_stream(master_seed, run).integers(0, 2**63 - 1))


class RunRecord(NamedTuple):
    run: int
    seed: int
    best_fitness: float
    feasible: bool
    best_position: tuple[float, ...]
    evaluations: int
    elapsed: float
    best_series: tuple[float, ...]
    evaluations_series: tuple[int, ...]
    elapsed_series: tuple[float, ...]


def execute_run(config: ExperimentConfig, run: int) -> RunRecord:
    problem = build_problem(config)
    params = build_params(config)
    seed = run_seed(config.master_seed, run)
    result = run_algorithm(config.algorithm, problem, params, seed)
    return RunRecord(
        run=run,
        seed=seed,
        best_fitness=float(result.best.fitness),
        feasible=bool(result.best.feasible),
        best_position=tuple(float(v) for v in result.best.position),
        evaluations=result.evaluations,
        elapsed=float(result.elapsed),
        best_series=tuple(float(h.best_fitness) for h in result.history),
        evaluations_series=tuple(int(h.evaluations) for h in result.history),
        elapsed_series=tuple(float(h.elapsed) for h in result.history),
    )


def _execute(job: tuple[ExperimentConfig, int]) -> RunRecord:
    return execute_run(*job)


@dataclass(frozen=True)
class Summary:
    """Mean, best, worst and population stdev of run bests, plus cost."""

    iteration: int
    mean: float
    best: float
    worst: float
    stdev: float
    mrt: float
    cspr: float

    @classmethod
    def of(cls, iteration: int, fitness: Sequence[float], elapsed: Sequence[float],
           evaluations: Sequence[int]) -> "Summary":
        return cls(
            iteration=iteration,
            mean=statistics.fmean(fitness),
            best=min(fitness),
            worst=max(fitness),
            stdev=statistics.pstdev(fitness),
            mrt=statistics.fmean(elapsed),
            cspr=sum(evaluations) / len(evaluations),
        )


@dataclass(frozen=True)
class RunStatistics:
    algorithm: str
    mean: float
    best: float
    worst: float
    stdev: float
    mrt: float
    cspr: float
    runs: tuple[RunRecord, ...]
    checkpoints: tuple[Summary, ...] = ()

    @property
    def all_feasible(self) -> bool:
        return all(r.feasible for r in self.runs)


@dataclass(frozen=True)
class ConvergenceTrace:
    mean: tuple[float, ...]
    stdev: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.mean) != len(self.stdev):
            raise ContractError("trace series must have equal length")

    def __len__(self) -> int:
        return len(self.mean)


def summarize(algorithm: str, records: Sequence[RunRecord],
              checkpoints: Sequence[int] = DEFAULT_CHECKPOINTS) -> tuple[RunStatistics, ConvergenceTrace]:
    """Aggregate finished runs; checkpoints past the last iteration are dropped."""
    if not records:
        raise ContractError("need at least one run to summarize")
    records = sorted(records, key=lambda r: r.run)
    final = Summary.of(len(records[0].best_series), [r.best_fitness for r in records],
                       [r.elapsed for r in records], [r.evaluations for r in records])
    n_iter = min(len(r.best_series) for r in records)
    marks = []
    for c in sorted(set(checkpoints)):
        if c <= n_iter:
            i = c - 1
            marks.append(Summary.of(c, [r.best_series[i] for r in records],
                                    [r.elapsed_series[i] for r in records],
                                    [r.evaluations_series[i] for r in records]))
    series = np.array([r.best_series[:n_iter] for r in records])
    trace = ConvergenceTrace(tuple(float(v) for v in series.mean(axis=0)),
                             tuple(float(v) for v in series.std(axis=0)))
    stats = RunStatistics(algorithm, final.mean, final.best, final.worst, final.stdev,
                          final.mrt, final.cspr, tuple(records), tuple(marks))
    return stats, trace


def run_experiment(config: ExperimentConfig) -> tuple[RunStatistics, ConvergenceTrace]:
    """Run ``config.runs`` seeded runs on ``config.workers`` processes."""
    build_problem(config)  # fail fast on an unavailable backend
    build_params(config)
    jobs = [(config, r) for r in range(config.runs)]
    if config.workers == 1 or config.runs == 1:
        records = [_execute(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=min(config.workers, config.runs)) as pool:
            records = list(pool.map(_execute, jobs))
    return summarize(config.algorithm, records, config.checkpoints)


# comparisons ---------------------------------------------------------------

_SHARED = ("problem", "backend", "population", "iterations", "runs", "master_seed", "dimension")


@dataclass(frozen=True)
class Comparison:
    modified: RunStatistics
    standard: RunStatistics
    differences: tuple[float, ...]  # modified best minus standard best, per seed
    wins: int
    ties: int
    losses: int

    @property
    def mean_difference(self) -> float:
        return statistics.fmean(self.differences)


def compare_variants(modified: ExperimentConfig, standard: ExperimentConfig) -> Comparison:
    """Paired-seed comparison of two configurations that differ only in algorithm."""
    for name in _SHARED:
        if getattr(modified, name) != getattr(standard, name):
            raise ConfigError(f"configurations differ in {name}: "
                              f"{getattr(modified, name)!r} vs {getattr(standard, name)!r}")
    mod, _ = run_experiment(modified)
    std, _ = run_experiment(standard)
    diffs = tuple(a.best_fitness - b.best_fitness for a, b in zip(mod.runs, std.runs))
    wins = sum(d < 0 for d in diffs)
    ties = sum(d == 0 for d in diffs)
    return Comparison(mod, std, diffs, wins, ties, len(diffs) - wins - ties)
