"""Command-line entry point: ``evosize optimize`` and ``evosize compare``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..core import ContractError, InfeasibleSpecError, SearchStarvationError
from .benchmarks import ConfigError
from .experiment import ExperimentConfig, compare_variants, load_config, run_experiment
from .report import FORMATS, emit_report, render_comparison, render_table

EXIT_OK, EXIT_CONFIG, EXIT_BACKEND = 0, 2, 3


def _checkpoints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"checkpoints must be comma-separated integers: {text!r}") from None


def _params(text: str) -> dict:
    try:
        value = json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"--params must be a JSON object: {exc}") from None
    if not isinstance(value, dict):
        raise argparse.ArgumentTypeError("--params must be a JSON object")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="evosize", description="Population-based op-amp sizing experiments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    opt = sub.add_parser("optimize", help="run one algorithm for several seeds")
    opt.add_argument("--algorithm", required=True, help="MABCO, MGA, MGWO, MPSO or an S-prefixed baseline")
    opt.add_argument("--problem", default="two_stage_65n", help="preset name or problem file")
    opt.add_argument("--backend", default="analytic", help="analytic, simulator or benchmark:NAME")
    opt.add_argument("--population", type=int, default=20)
    opt.add_argument("--iterations", type=int, default=200)
    opt.add_argument("--runs", type=int, default=10)
    opt.add_argument("--seed", type=int, default=0, help="master seed")
    opt.add_argument("--workers", type=int, default=1)
    opt.add_argument("--out", required=True, help="output directory")
    opt.add_argument("--checkpoints", type=_checkpoints, default=(100, 200, 300))
    opt.add_argument("--format", choices=FORMATS, default="csv")
    opt.add_argument("--params", type=_params, default={}, help="JSON object of algorithm parameters")
    opt.add_argument("--dimension", type=int, default=6, help="benchmark dimension")
    opt.add_argument("--simulator", help="simulator executable (default: $EVOSIZE_SPICE or ngspice)")
    opt.add_argument("--model", default="models.lib", help="model card included by the netlist")
    opt.add_argument("--timeout", type=float, default=60.0, help="seconds per simulation")
    opt.add_argument("--no-timing", action="store_true", help="omit wall-clock columns from reports")

    cmp = sub.add_parser("compare", help="paired-seed comparison of two JSON configurations")
    cmp.add_argument("--modified", required=True, type=Path)
    cmp.add_argument("--standard", required=True, type=Path)
    return parser


def _optimize(args: argparse.Namespace) -> int:
    config = ExperimentConfig(
        algorithm=args.algorithm, problem=args.problem, backend=args.backend,
        population=args.population, iterations=args.iterations, runs=args.runs,
        master_seed=args.seed, workers=args.workers, params=args.params,
        checkpoints=args.checkpoints, dimension=args.dimension, simulator=args.simulator,
        model_path=args.model, timeout=args.timeout,
    )
    stats, trace = run_experiment(config)
    emit_report(stats, trace, args.format, args.out, include_timing=not args.no_timing)
    sys.stdout.write(render_table(stats, include_timing=not args.no_timing))
    return EXIT_OK


def _compare(args: argparse.Namespace) -> int:
    result = compare_variants(load_config(args.modified), load_config(args.standard))
    sys.stdout.write(render_comparison(result))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _optimize(args) if args.command == "optimize" else _compare(args)
    except (ConfigError, ContractError, InfeasibleSpecError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (SearchStarvationError, RuntimeError, ValueError) as exc:
        print(f"backend failure: {exc}", file=sys.stderr)
        return EXIT_BACKEND
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_BACKEND


if __name__ == "__main__":
    sys.exit(main())
