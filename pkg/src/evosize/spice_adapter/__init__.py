"""External-simulator backend: netlist emission, subprocess runs, output parsing."""

from .backend import SpiceBackend, simulator_problem
from .measure import DEVICES, MARKERS, MeasurementParseError, format_measurements, parse_measurements
from .netlist import (
    NetlistTemplate,
    TemplateError,
    emit_netlist,
    format_scaled,
    load_template,
    parse_scaled,
    read_decision_variables,
    variable_placeholders,
)
from .runner import (
    DEFAULT_SIMULATOR,
    SIMULATOR_ENV,
    SimulationError,
    SimulatorConfig,
    SimulatorExitError,
    SimulatorNotFoundError,
    SimulatorTimeoutError,
    resolve_executable,
    run_simulation,
)

__all__ = [
    "DEFAULT_SIMULATOR", "DEVICES", "MARKERS", "MeasurementParseError", "NetlistTemplate",
    "SIMULATOR_ENV", "SimulationError", "SimulatorConfig", "SimulatorExitError",
    "SimulatorNotFoundError", "SimulatorTimeoutError", "SpiceBackend", "TemplateError",
    "emit_netlist", "format_measurements", "format_scaled", "load_template", "parse_measurements",
    "parse_scaled", "read_decision_variables", "resolve_executable", "run_simulation",
    "simulator_problem", "variable_placeholders",
]
