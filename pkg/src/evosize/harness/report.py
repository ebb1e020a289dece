"""Writing experiment results as CSV, JSON or a plain-text table."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

from .experiment import Comparison, ConvergenceTrace, RunStatistics, Summary

FORMATS = ("csv", "json", "table")
STDEV_NOTE = "stdev is the population standard deviation (divide by n) of the run bests"
TRACE_HEADER = ("iteration", "mean", "stdev")


def _num(x: float) -> str:
    return repr(float(x))


def _rows(stats: RunStatistics, include_timing: bool) -> tuple[list[str], list[list[str]]]:
    header = ["iteration", "mean", "best", "worst", "stdev"] + (["mrt"] if include_timing else []) + ["cspr"]
    rows = []
    for s in stats.checkpoints:
        row = [str(s.iteration), _num(s.mean), _num(s.best), _num(s.worst), _num(s.stdev)]
        if include_timing:
            row.append(_num(s.mrt))
        row.append(_num(s.cspr))
        rows.append(row)
    final = ["final", _num(stats.mean), _num(stats.best), _num(stats.worst), _num(stats.stdev)]
    if include_timing:
        final.append(_num(stats.mrt))
    final.append(_num(stats.cspr))
    rows.append(final)
    return header, rows


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def trace_csv(trace: ConvergenceTrace) -> str:
    rows = [[str(i), _num(m), _num(s)] for i, (m, s) in enumerate(zip(trace.mean, trace.stdev), start=1)]
    return _csv(TRACE_HEADER, rows)


def runs_csv(stats: RunStatistics, include_timing: bool) -> str:
    header = ["run", "seed", "best", "feasible", "evaluations"] + (["elapsed"] if include_timing else [])
    header += [f"x{d}" for d in range(len(stats.runs[0].best_position))]
    rows = []
    for r in stats.runs:
        row = [str(r.run), str(r.seed), _num(r.best_fitness), str(r.feasible).lower(), str(r.evaluations)]
        if include_timing:
            row.append(_num(r.elapsed))
        rows.append(row + [_num(v) for v in r.best_position])
    return _csv(header, rows)


def _summary_dict(s: Summary, include_timing: bool) -> dict:
    d = {"iteration": s.iteration, "mean": s.mean, "best": s.best, "worst": s.worst,
         "stdev": s.stdev, "cspr": s.cspr}
    if include_timing:
        d["mrt"] = s.mrt
    return d


def report_dict(stats: RunStatistics, trace: ConvergenceTrace, include_timing: bool = True) -> dict:
    out = {
        "algorithm": stats.algorithm,
        "stdev_convention": "population",
        "final": {"mean": stats.mean, "best": stats.best, "worst": stats.worst,
                  "stdev": stats.stdev, "cspr": stats.cspr},
        "checkpoints": [_summary_dict(s, include_timing) for s in stats.checkpoints],
        "runs": [],
        "trace": {"mean": list(trace.mean), "stdev": list(trace.stdev)},
    }
    if include_timing:
        out["final"]["mrt"] = stats.mrt
    for r in stats.runs:
        run = {"run": r.run, "seed": r.seed, "best": r.best_fitness, "feasible": r.feasible,
               "evaluations": r.evaluations, "position": list(r.best_position)}
        if include_timing:
            run["elapsed"] = r.elapsed
        out["runs"].append(run)
    return out


def render_table(stats: RunStatistics, include_timing: bool = True) -> str:
    """Fixed-width summary, one row per checkpoint plus the final iteration."""
    header, rows = _rows(stats, include_timing)
    cells = [header] + [[c if i == 0 else _short(c) for i, c in enumerate(r)] for r in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = [f"{stats.algorithm}: {len(stats.runs)} runs; {STDEV_NOTE}"]
    for row in cells:
        lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
    return "\n".join(lines) + "\n"


def _short(text: str) -> str:
    return format(float(text), ".6g")


def emit_report(stats: RunStatistics, trace: ConvergenceTrace, fmt: str, out_dir: str | Path,
                include_timing: bool = True) -> list[Path]:
    """Write the report files into ``out_dir`` and return their paths.

    ``csv`` writes summary.csv, trace.csv and runs.csv; ``json`` writes
    report.json; ``table`` writes report.txt and trace.csv.
    """
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {', '.join(FORMATS)}, got {fmt!r}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files: dict[str, str] = {}
    if fmt == "csv":
        header, rows = _rows(stats, include_timing)
        files["summary.csv"] = f"# {STDEV_NOTE}\n" + _csv(header, rows)
        files["trace.csv"] = trace_csv(trace)
        files["runs.csv"] = runs_csv(stats, include_timing)
    elif fmt == "json":
        files["report.json"] = json.dumps(report_dict(stats, trace, include_timing), indent=2) + "\n"
    else:
        files["report.txt"] = render_table(stats, include_timing)
        files["trace.csv"] = trace_csv(trace)
    paths = []
    for name, text in files.items():
        path = out / name
        path.write_text(text)
        paths.append(path)
    return paths


def render_comparison(cmp: Comparison) -> str:
    m, s = cmp.modified, cmp.standard
    lines = [
        f"{'':10}{'mean':>14}{'best':>14}{'worst':>14}{'stdev':>14}",
        f"{m.algorithm:10}{m.mean:14.6g}{m.best:14.6g}{m.worst:14.6g}{m.stdev:14.6g}",
        f"{s.algorithm:10}{s.mean:14.6g}{s.best:14.6g}{s.worst:14.6g}{s.stdev:14.6g}",
        f"paired seeds: {len(cmp.differences)}, mean difference {cmp.mean_difference:.6g}, "
        f"wins {cmp.wins}, ties {cmp.ties}, losses {cmp.losses}",
    ]
    return "\n".join(lines) + "\n"
