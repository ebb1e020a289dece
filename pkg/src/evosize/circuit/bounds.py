"""Feasible-interval derivation for the decision variables.

Bounds come from hand-analysis relations between the specifications and
square-law overdrives; they are necessary-condition estimates, so a point
inside them still has to pass the survivability test.
"""

from __future__ import annotations

import math
from dataclasses import replace

import numpy as np

from ..core import Bounds, Candidate, ContractError, InfeasibleSpecError, SearchSpace, clamp_to_nearest_bound
from .mosfet import beta_for
from .spec import ProblemSpec, TechnologyCard, Topology

# devices drawing supply current, used to split the power budget
_POWER_BRANCHES = {Topology.TWO_STAGE_MILLER: 3, Topology.FOLDED_CASCODE: 4}


def search_space(spec: ProblemSpec, tech: TechnologyCard) -> SearchSpace:
    """The aspect-ratio box for widths plus the bias-current box."""
    n_w = len(spec.variables) - 1
    L = tech.l_fixed
    lo = [spec.aspect_ratio_min * L] * n_w + [spec.ibias_min]
    hi = [spec.aspect_ratio_max * L] * n_w + [spec.ibias_max]
    return SearchSpace(np.array(lo), np.array(hi), spec.variables)


class _Builder:
    """Collects width intervals, remembering which relation set each side."""

    def __init__(self, spec: ProblemSpec, tech: TechnologyCard) -> None:
        self.spec, self.tech = spec, tech
        self.box = search_space(spec, tech)
        self.lo: dict[str, tuple[float, str]] = {}
        self.hi: dict[str, tuple[float, str]] = {}

    def width(self, name: str, i_lo: float, i_hi: float, kp: float, vov_max: float,
              why_lo: str, why_hi: str = "minimum overdrive") -> None:
        """Width window for a device carrying [i_lo, i_hi] with overdrive <= vov_max."""
        L = self.tech.l_fixed
        if vov_max <= 0:
            raise InfeasibleSpecError(f"{name}: {why_lo} leaves no overdrive headroom "
                                      f"({vov_max:.3f} V) against {why_hi}")
        self.raise_lo(name, beta_for(i_lo, vov_max) / kp * L, why_lo)
        self.cut_hi(name, beta_for(i_hi, self.spec.vov_min) / kp * L, why_hi)

    def raise_lo(self, name: str, value: float, why: str) -> None:
        if name not in self.lo or value > self.lo[name][0]:
            self.lo[name] = (value, why)

    def cut_hi(self, name: str, value: float, why: str) -> None:
        if name not in self.hi or value < self.hi[name][0]:
            self.hi[name] = (value, why)

    def build(self) -> Bounds:
        names = self.box.names
        lo, hi = [], []
        for d, name in enumerate(names):
            self.raise_lo(name, float(self.box.lower[d]), "search-space lower bound")
            self.cut_hi(name, float(self.box.upper[d]), "search-space upper bound")
            (a, why_a), (b, why_b) = self.lo[name], self.hi[name]
            if a > b:
                raise InfeasibleSpecError(
                    f"{name}: lower bound {a:.4g} from {why_a} exceeds upper bound {b:.4g} from {why_b}")
            lo.append(a)
            hi.append(b)
        return Bounds(np.array(lo), np.array(hi), names)


def _bias_window(b: _Builder) -> tuple[float, float]:
    spec, tech = b.spec, b.tech
    sr = spec.limit("sr", ">=")
    pmax = spec.limit("power", "<=")
    # slew: I_tail >= SR * C (two-stage: Cc on the tail; folded: half the tail on CL)
    if sr is not None:
        if spec.topology is Topology.TWO_STAGE_MILLER:
            b.raise_lo("ibias", sr * 1e6 * spec.cc, "slew rate")
        else:
            b.raise_lo("ibias", 2.0 * sr * 1e6 * spec.cl, "slew rate")
    if pmax is not None:
        b.cut_hi("ibias", pmax / tech.vdd / _POWER_BRANCHES[spec.topology], "power budget")
    i_lo = max(b.lo.get("ibias", (spec.ibias_min, ""))[0], spec.ibias_min)
    i_hi = min(b.hi.get("ibias", (spec.ibias_max, ""))[0], spec.ibias_max)
    if i_lo > i_hi:
        raise InfeasibleSpecError(
            f"ibias: lower bound {i_lo:.4g} from slew rate exceeds upper bound {i_hi:.4g} from power budget")
    return i_lo, i_hi


def _two_stage(b: _Builder) -> None:
    spec, tech = b.spec, b.tech
    vdd, vtn, vtp = tech.vdd, tech.vth_n, tech.vtp
    i_lo, i_hi = _bias_window(b)

    # step 2: M3/M4 V_SG <= VDD - ICMR_max + V_tn keeps M1 saturated at the top of the ICMR
    b.width("w34", i_lo / 2, i_hi / 2, tech.kp_p, vdd - spec.icmr_max + vtn - vtp, "ICMR max")

    # step 3: input pair transconductance from the unity-gain bandwidth
    ugb = spec.limit("ugb", ">=")
    b.width("w12", i_lo / 2, i_hi / 2, tech.kp_n, math.inf, "ICMR")
    if ugb is not None:
        gm = 2 * math.pi * ugb * spec.cc
        b.raise_lo("w12", gm * gm / (2 * tech.kp_n * (i_hi / 2)) * tech.l_fixed, "unity-gain bandwidth")

    # step 4: tail headroom at ICMR_min
    b.width("w58", i_lo, i_hi, tech.kp_n, spec.icmr_min - vtn - spec.vov_min, "ICMR min")

    # steps 5 and 6: second stage from the output swing; its current shares the power budget
    b.width("w6", i_lo, i_hi, tech.kp_p, vdd - spec.vout_max, "maximum output voltage")
    b.width("w7", i_lo, i_hi, tech.kp_n, spec.vout_min, "minimum output voltage")


def _folded_cascode(b: _Builder) -> None:
    spec, tech = b.spec, b.tech
    vdd, vtn = tech.vdd, tech.vth_n
    i_lo, i_hi = _bias_window(b)
    vmin = spec.vov_min

    # step 2: PMOS current sources (M3, M4, Mbp) keep M1 saturated at ICMR_max
    b.width("w34bp", i_lo, i_hi, tech.kp_p, vdd - spec.icmr_max + vtn, "ICMR max")

    # step 3: input pair from the unity-gain bandwidth into C_L
    ugb = spec.limit("ugb", ">=")
    b.width("w12", i_lo / 2, i_hi / 2, tech.kp_n, math.inf, "ICMR")
    if ugb is not None:
        gm = 2 * math.pi * ugb * spec.cl
        b.raise_lo("w12", gm * gm / (2 * tech.kp_n * (i_hi / 2)) * tech.l_fixed, "unity-gain bandwidth")

    # step 4: tail (M5, Mbn) headroom at ICMR_min
    b.width("wbn5", i_lo, i_hi, tech.kp_n, spec.icmr_min - vtn - vmin, "ICMR min")

    # step 5: PMOS cascodes M10/M11 share the top headroom with M3/M4
    b.width("w1011", i_lo / 2, i_hi / 2, tech.kp_p, vdd - spec.vout_max - vmin, "maximum output voltage")

    # step 6: NMOS cascode mirror M6..M9 below the output
    b.width("w67", i_lo / 2, i_hi / 2, tech.kp_n, spec.vout_min - vmin, "minimum output voltage")
    b.width("w89", i_lo / 2, i_hi / 2, tech.kp_n, spec.vout_min - vmin, "minimum output voltage")


def derive_bounds(spec: ProblemSpec, tech: TechnologyCard) -> Bounds:
    b = _Builder(spec, tech)
    if spec.topology is Topology.TWO_STAGE_MILLER:
        _two_stage(b)
    else:
        _folded_cascode(b)
    return b.build()


def generate_candidate_pgf(bounds: Bounds, rng: np.random.Generator) -> Candidate:
    return Candidate(bounds.sample_uniform(rng))


def repair_bounds(candidate: Candidate, bounds: Bounds) -> Candidate:
    pos = clamp_to_nearest_bound(candidate.position, bounds)
    if np.array_equal(pos, candidate.position):
        return candidate
    return replace(candidate, position=pos, fitness=None, feasible=False, report=None)


def check_bounds_dimension(bounds: Bounds, spec: ProblemSpec) -> None:
    if bounds.dimension != len(spec.variables):
        raise ContractError("bounds do not match the problem's variables")
