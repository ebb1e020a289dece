"""Technology cards, problem specifications and performance reports."""

from __future__ import annotations

import configparser
import enum
import math
import operator
from dataclasses import dataclass, field, fields, replace
from importlib import resources
from pathlib import Path

from ..core import ContractError
from .units import parse_quantity


class Topology(str, enum.Enum):
    TWO_STAGE_MILLER = "two_stage_miller"
    FOLDED_CASCODE = "folded_cascode"


class Objective(str, enum.Enum):
    AREA = "area"
    NOISE = "noise"
    POWER = "power"


# decision-variable names in optimizer order
VARIABLES = {
    Topology.TWO_STAGE_MILLER: ("w12", "w34", "w58", "w6", "w7", "ibias"),
    Topology.FOLDED_CASCODE: ("w12", "w34bp", "wbn5", "w67", "w89", "w1011", "ibias"),
}

# how many physical devices share each width variable
MULTIPLICITY = {
    Topology.TWO_STAGE_MILLER: (2, 2, 2, 1, 1),
    Topology.FOLDED_CASCODE: (2, 3, 2, 2, 2, 2),
}

METRICS = ("gain_db", "f3db", "ugb", "pm", "sr", "power", "noise_psd", "area")


@dataclass(frozen=True)
class TechnologyCard:
    name: str
    vdd: float
    l_fixed: float
    kp_n: float
    kp_p: float
    vth_n: float
    vth_p: float
    lambda_n: float
    lambda_p: float
    cox: float
    temperature: float = 300.0

    def __post_init__(self) -> None:
        for f in fields(self):
            if f.name in ("name", "vth_p"):
                continue
            if not getattr(self, f.name) > 0:
                raise ContractError(f"technology parameter {f.name} must be positive")
        if not 0 < abs(self.vth_p) < self.vdd or not self.vth_n < self.vdd:
            raise ContractError("threshold voltages must be below the supply")

    @property
    def vtp(self) -> float:
        return abs(self.vth_p)


_OPS = {">=": operator.ge, "<=": operator.le}


@dataclass(frozen=True)
class Constraint:
    metric: str
    direction: str
    threshold: float

    def __post_init__(self) -> None:
        if self.metric not in METRICS:
            raise ContractError(f"unknown metric {self.metric!r}")
        if self.direction not in _OPS:
            raise ContractError(f"direction must be >= or <=, got {self.direction!r}")
        if not math.isfinite(self.threshold):
            raise ContractError(f"threshold for {self.metric} must be finite")

    def margin(self, value: float) -> float:
        """Signed distance to the threshold; negative means violated."""
        if self.direction == ">=":
            return value - self.threshold
        return self.threshold - value


@dataclass(frozen=True)
class ProblemSpec:
    topology: Topology
    constraints: tuple[Constraint, ...]
    objective: Objective
    cl: float
    icmr_min: float
    icmr_max: float
    aspect_ratio_min: float
    aspect_ratio_max: float
    ibias_min: float
    ibias_max: float
    vout_min: float
    vout_max: float
    cc: float = 0.0
    vov_min: float = 0.05
    noise_frequency: float = 1e6

    def __post_init__(self) -> None:
        object.__setattr__(self, "topology", Topology(self.topology))
        object.__setattr__(self, "objective", Objective(self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if not 0 < self.aspect_ratio_min < self.aspect_ratio_max:
            raise ContractError("aspect ratio bounds must satisfy 0 < min < max")
        if not 0 < self.ibias_min < self.ibias_max:
            raise ContractError("bias current box must satisfy 0 < min < max")
        if self.icmr_min >= self.icmr_max or self.vout_min >= self.vout_max:
            raise ContractError("ICMR and output windows must be non-empty")
        if self.topology is Topology.TWO_STAGE_MILLER and not self.cc > 0:
            raise ContractError("two-stage problems need a compensation capacitor")
        if self.cl <= 0 or self.vov_min <= 0:
            raise ContractError("load capacitance and minimum overdrive must be positive")

    def limit(self, metric: str, direction: str) -> float | None:
        for c in self.constraints:
            if c.metric == metric and c.direction == direction:
                return c.threshold
        return None

    @property
    def variables(self) -> tuple[str, ...]:
        return VARIABLES[self.topology]


@dataclass(frozen=True)
class PerformanceReport:
    gain_db: float
    f3db: float
    ugb: float
    pm: float
    sr: float  # V/us
    power: float
    noise_psd: float  # V/sqrt(Hz)
    area: float
    saturation_ok: bool
    saturation_margins: tuple[tuple[str, float], ...] = ()
    margins: tuple[tuple[str, float], ...] = ()

    def metric(self, name: str) -> float:
        return float(getattr(self, name))

    def with_margins(self, spec: ProblemSpec) -> "PerformanceReport":
        m = tuple((c.metric, c.margin(self.metric(c.metric))) for c in spec.constraints)
        return replace(self, margins=m)

    @classmethod
    def scored(cls, spec: ProblemSpec, **values) -> "PerformanceReport":
        """Build a report with its constraint margins filled in."""
        m = tuple((c.metric, c.margin(float(values[c.metric]))) for c in spec.constraints)
        return cls(**values, margins=m)


# ---- preset files -----------------------------------------------------------

PRESETS = ("two_stage_65n", "two_stage_65n_150uw", "folded_cascode_180n")

_TECH_KEYS = {f.name for f in fields(TechnologyCard)} - {"name"}


def _constraint_from(metric: str, text: str) -> Constraint:
    text = text.strip()
    for op in (">=", "<="):
        if text.startswith(op):
            return Constraint(metric, op, parse_quantity(text[len(op):]))
    raise ValueError(f"constraint {metric} must start with >= or <=: {text!r}")


def load_problem_file(path: str | Path) -> tuple[ProblemSpec, TechnologyCard]:
    """Read a key/value problem file (see ``circuit/data/*.ini``)."""
    text = Path(path).read_text()
    return parse_problem_text(text, source=str(path))


def parse_problem_text(text: str, source: str = "<string>") -> tuple[ProblemSpec, TechnologyCard]:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    cp.optionxform = str
    cp.read_string(text, source=source)
    for section in ("technology", "problem", "constraints"):
        if not cp.has_section(section):
            raise ValueError(f"{source}: missing [{section}] section")

    tsec = cp["technology"]
    unknown = set(tsec) - _TECH_KEYS - {"name"}
    if unknown:
        raise ValueError(f"{source}: unknown technology keys {sorted(unknown)}")
    tech = TechnologyCard(name=tsec.get("name", "unnamed"),
                          **{k: parse_quantity(v) for k, v in tsec.items() if k != "name"})

    psec = dict(cp["problem"])
    kwargs: dict = {"topology": psec.pop("topology"), "objective": psec.pop("objective", "area")}
    cc_ratio = psec.pop("cc_ratio", None)
    for k, v in psec.items():
        kwargs[k] = parse_quantity(v)
    if cc_ratio is not None:
        kwargs["cc"] = float(cc_ratio) * kwargs["cl"]
    kwargs["constraints"] = tuple(_constraint_from(k, v) for k, v in cp["constraints"].items())
    return ProblemSpec(**kwargs), tech


def load_preset(name: str) -> tuple[ProblemSpec, TechnologyCard]:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    text = resources.files("evosize.circuit").joinpath("data", f"{name}.ini").read_text()
    return parse_problem_text(text, source=name)
