"""Netlist templates and their rendering."""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal
from importlib import resources
from typing import Sequence

import numpy as np

from ..circuit.spec import VARIABLES, ProblemSpec, TechnologyCard, Topology
from ..core import ContractError

PLACEHOLDER = re.compile(r"\{\{([A-Z0-9_]+)\}\}")

# placeholders every template must carry besides the decision variables
SETTINGS = ("MODEL", "NMOS", "PMOS", "L", "VDD", "VCM", "CL", "NOISE_FREQ")
EXTRA_SETTINGS = {Topology.TWO_STAGE_MILLER: ("CC",), Topology.FOLDED_CASCODE: ("VCASP", "VCASN")}

# .param name written into the netlist for each decision variable
_PARAM_LINE = re.compile(r"^\.param\s+(.*)$", re.MULTILINE | re.IGNORECASE)
_ASSIGN = re.compile(r"(\w+)=(\S+)")


class TemplateError(ValueError):
    """A netlist template is missing a placeholder or repeats a decision variable."""


def variable_placeholders(topology: Topology) -> tuple[str, ...]:
    return tuple(name.upper() for name in VARIABLES[Topology(topology)])


@dataclass(frozen=True)
class NetlistTemplate:
    topology: Topology
    text: str
    name: str = "custom"

    def __post_init__(self) -> None:
        object.__setattr__(self, "topology", Topology(self.topology))
        found = PLACEHOLDER.findall(self.text)
        for var in variable_placeholders(self.topology):
            count = found.count(var)
            if count == 0:
                raise TemplateError(f"template {self.name!r} lacks placeholder {{{{{var}}}}}")
            if count > 1:
                raise TemplateError(f"decision variable {var} appears {count} times in {self.name!r}")
        for key in SETTINGS + EXTRA_SETTINGS[self.topology]:
            if key not in found:
                raise TemplateError(f"template {self.name!r} lacks placeholder {{{{{key}}}}}")

    @property
    def placeholders(self) -> frozenset[str]:
        return frozenset(PLACEHOLDER.findall(self.text))


def load_template(topology: Topology | str) -> NetlistTemplate:
    """The packaged test bench for ``topology``."""
    topo = Topology(topology)
    text = resources.files(__package__).joinpath("templates", f"{topo.value}.cir").read_text()
    return NetlistTemplate(topo, text, name=f"{topo.value}.cir")


def format_scaled(value: float, exponent: int, suffix: str) -> str:
    """Render ``value / 10**exponent`` exactly, followed by an engineering suffix.

    The shortest repr of the float is shifted in decimal, so parsing the
    number back and scaling by ``10**exponent`` recovers the same float.
    """
    d = Decimal(repr(float(value))).scaleb(-exponent).normalize()
    text = format(d, "f")
    return text + suffix


def parse_scaled(token: str) -> float:
    """Inverse of :func:`format_scaled` for the suffixes it emits."""
    scale = {"n": -9, "u": -6, "f": -15, "p": -12, "m": -3, "": 0}
    m = re.fullmatch(r"([-+0-9.eE]+)([a-zA-Z]*)", token)
    if not m or m.group(2).lower() not in scale:
        raise ValueError(f"cannot read quantity {token!r}")
    return float(Decimal(m.group(1)).scaleb(scale[m.group(2).lower()]))


def _variable_tokens(topology: Topology, position: np.ndarray) -> dict[str, str]:
    names = variable_placeholders(topology)
    out = {name: format_scaled(v, -9, "n") for name, v in zip(names[:-1], position[:-1])}
    out[names[-1]] = format_scaled(position[-1], -6, "u")
    return out


def emit_netlist(position: Sequence[float], template: NetlistTemplate, spec: ProblemSpec,
                 tech: TechnologyCard, model_path: str = "models.lib",
                 device_models: tuple[str, str] = ("nmos", "pmos")) -> str:
    """Fill ``template`` for one candidate.

    Widths are written in nanometres and the bias current in microamps.
    """
    if template.topology is not spec.topology:
        raise ContractError(f"template is for {template.topology.value}, problem is {spec.topology.value}")
    x = np.asarray(position, dtype=float)
    n = len(VARIABLES[spec.topology])
    if x.shape != (n,):
        raise ContractError(f"{spec.topology.value} expects {n} decision variables, got {x.size}")
    if not np.all(np.isfinite(x)) or np.any(x <= 0):
        raise ContractError("widths and bias current must be positive and finite")

    values = _variable_tokens(spec.topology, x)
    values.update(
        MODEL=model_path,
        NMOS=device_models[0],
        PMOS=device_models[1],
        L=format_scaled(tech.l_fixed, -9, "n"),
        VDD=repr(tech.vdd),
        VCM=repr(0.5 * (spec.icmr_min + spec.icmr_max)),
        CL=format_scaled(spec.cl, -15, "f"),
        CC=format_scaled(spec.cc, -15, "f"),
        NOISE_FREQ=repr(spec.noise_frequency),
        VCASP=repr(tech.vdd - tech.vtp - 2.0 * spec.vov_min),
        VCASN=repr(tech.vth_n + 2.0 * spec.vov_min),
    )

    def fill(match: re.Match) -> str:
        key = match.group(1)
        if key not in values:
            raise TemplateError(f"no value for placeholder {{{{{key}}}}}")
        return values[key]

    return PLACEHOLDER.sub(fill, template.text)


def read_decision_variables(netlist: str, topology: Topology | str) -> np.ndarray:
    """Recover the decision vector from the ``.param`` lines of a netlist."""
    topo = Topology(topology)
    assigned: dict[str, str] = {}
    for line in _PARAM_LINE.findall(netlist):
        assigned.update(_ASSIGN.findall(line))
    try:
        return np.array([parse_scaled(assigned[name]) for name in VARIABLES[topo]])
    except KeyError as exc:
        raise TemplateError(f"netlist has no .param for {exc.args[0]}") from None
