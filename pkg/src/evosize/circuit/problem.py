from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from ..core import Bounds, ContractError, Evaluation, SearchSpace
from .bounds import derive_bounds, search_space
from .folded_cascode import evaluate_folded_cascode
from .spec import Objective, PerformanceReport, ProblemSpec, TechnologyCard, Topology, load_preset
from .two_stage import evaluate_two_stage

_MODELS: dict[Topology, Callable[..., PerformanceReport]] = {
    Topology.TWO_STAGE_MILLER: evaluate_two_stage,
    Topology.FOLDED_CASCODE: evaluate_folded_cascode,
}

_OBJECTIVE_METRIC = {Objective.AREA: "area", Objective.NOISE: "noise_psd", Objective.POWER: "power"}


@dataclass(frozen=True)
class SurvivabilityResult:
    passed: bool
    violations: tuple[tuple[str, float], ...]

    def __bool__(self) -> bool:
        return self.passed


def survivability_test(report: PerformanceReport, spec: ProblemSpec) -> SurvivabilityResult:
    """Pass iff every constraint holds and every device is saturated.

    Violations are (name, margin) pairs; saturation failures are listed per
    device with their voltage margin.
    """
    margins = report.margins or report.with_margins(spec).margins
    if len(margins) != len(spec.constraints):
        raise ContractError("report was produced for a different constraint set")
    bad = [(name, m) for name, m in margins if not m >= 0.0]
    sat = [(name, m) for name, m in report.saturation_margins if not m >= 0.0]
    if not report.saturation_ok and not sat:
        sat = [("saturation", -1.0)]
    bad += sat
    return SurvivabilityResult(not bad, tuple(bad))


def analytic_report(position, spec: ProblemSpec, tech: TechnologyCard) -> PerformanceReport:
    return _MODELS[spec.topology](position, spec, tech)


@dataclass(frozen=True)
class CircuitProblem:
    """Op-amp sizing problem evaluated with the analytic models.

    ``report_fn`` can be swapped for another backend that maps a position to
    a :class:`PerformanceReport` (the simulator adapter does this).
    """

    spec: ProblemSpec
    tech: TechnologyCard
    report_fn: Callable[[np.ndarray], PerformanceReport] | None = field(default=None, compare=False)

    @classmethod
    def from_preset(cls, name: str) -> "CircuitProblem":
        spec, tech = load_preset(name)
        return cls(spec, tech)

    @cached_property
    def space(self) -> SearchSpace:
        return search_space(self.spec, self.tech)

    @cached_property
    def _bounds(self) -> Bounds:
        return derive_bounds(self.spec, self.tech)

    def derived_bounds(self) -> Bounds:
        return self._bounds

    def report(self, position) -> PerformanceReport:
        if self.report_fn is not None:
            return self.report_fn(np.asarray(position, dtype=float))
        return analytic_report(position, self.spec, self.tech)

    def evaluate(self, position) -> Evaluation:
        rep = self.report(position)
        verdict = survivability_test(rep, self.spec)
        fitness = rep.metric(_OBJECTIVE_METRIC[self.spec.objective])
        return Evaluation(fitness, verdict.passed, rep, verdict.violations)
