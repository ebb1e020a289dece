"""Simulator-backed evaluation of a circuit problem."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..circuit.area import circuit_area
from ..circuit.problem import CircuitProblem
from ..circuit.spec import PerformanceReport, ProblemSpec, TechnologyCard
from ..core import EvaluationBudget
from .measure import parse_measurements
from .netlist import NetlistTemplate, emit_netlist, load_template
from .runner import SimulatorConfig, run_simulation


@dataclass(frozen=True)
class SpiceBackend:
    """Maps a position to a report by simulating it.

    Area is computed from the widths, not measured.  ``budget`` is optional
    because optimizers already count each evaluation call.
    """

    spec: ProblemSpec
    tech: TechnologyCard
    config: SimulatorConfig
    template: NetlistTemplate
    budget: EvaluationBudget | None = None

    def __call__(self, position: np.ndarray) -> PerformanceReport:
        netlist = emit_netlist(position, self.template, self.spec, self.tech, self.config.model_path)
        raw = run_simulation(netlist, self.config, self.budget)
        measured = parse_measurements(raw, self.spec.topology)
        area = circuit_area(self.spec.topology, position, self.tech.l_fixed)
        return replace(measured, area=area).with_margins(self.spec)


def simulator_problem(spec: ProblemSpec, tech: TechnologyCard, config: SimulatorConfig,
                      template: NetlistTemplate | None = None) -> CircuitProblem:
    """A circuit problem whose survivability test runs the external simulator."""
    template = template or load_template(spec.topology)
    return CircuitProblem(spec, tech, report_fn=SpiceBackend(spec, tech, config, template))
