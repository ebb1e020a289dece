"""Experiment orchestration, reports, benchmarks and the command line."""

from .benchmarks import BENCHMARKS, BenchmarkProblem, ConfigError, benchmark_evaluator, rosenbrock, sphere
from .experiment import (
    DEFAULT_CHECKPOINTS,
    Comparison,
    ConvergenceTrace,
    ExperimentConfig,
    RunRecord,
    RunStatistics,
    Summary,
    build_params,
    build_problem,
    compare_variants,
    execute_run,
    load_config,
    run_experiment,
    run_seed,
    summarize,
)
from .report import FORMATS, TRACE_HEADER, emit_report, render_comparison, render_table, report_dict, trace_csv

__all__ = [
    "BENCHMARKS", "BenchmarkProblem", "Comparison", "ConfigError", "ConvergenceTrace",
    "DEFAULT_CHECKPOINTS", "ExperimentConfig", "FORMATS", "RunRecord", "RunStatistics", "Summary",
    "TRACE_HEADER", "benchmark_evaluator", "build_params", "build_problem", "compare_variants",
    "emit_report", "execute_run", "load_config", "render_comparison", "render_table", "report_dict",
    "rosenbrock", "run_experiment", "run_seed", "sphere", "summarize", "trace_csv",
]
