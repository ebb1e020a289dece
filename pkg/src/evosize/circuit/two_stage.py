"""Analytic model of the two-stage Miller-compensated op-amp.

Devices: M1/M2 NMOS input pair, M3/M4 PMOS mirror load, M5 NMOS tail
mirrored from the diode M8 (W5 = W8, so I5 = I_bias), M6 PMOS common-source
second stage, M7 NMOS current sink mirrored from M8 (I7 = I_bias * W7/W8).

Position order: [W12, W34, W58, W6, W7, I_bias].
"""

from __future__ import annotations

import math
from typing import Sequence

from ..core import ContractError
from . import mosfet
from .area import circuit_area
from .spec import PerformanceReport, ProblemSpec, TechnologyCard, Topology

BOLTZMANN = 1.380649e-23


def _check_position(position: Sequence[float], n: int) -> list[float]:
    x = [float(v) for v in position]
    if len(x) != n:
        raise ContractError(f"expected {n} decision variables, got {len(x)}")
    if not all(v > 0 and math.isfinite(v) for v in x):
        raise ContractError(f"widths and bias current must be positive, got {x}")
    return x


def thermal_noise(gm_in: float, loads: Sequence[float], temperature: float) -> float:
    """Input-referred thermal noise density (V/sqrt(Hz)) of a differential stage."""
    psd = 16.0 * BOLTZMANN * temperature / (3.0 * gm_in) * (1.0 + sum(loads) / gm_in)
    return math.sqrt(psd)


def evaluate_two_stage(position: Sequence[float], spec: ProblemSpec,
                       tech: TechnologyCard) -> PerformanceReport:
    w12, w34, w58, w6, w7, ibias = _check_position(position, 6)
    L = tech.l_fixed
    kn, kp = tech.kp_n / L, tech.kp_p / L
    vtn, vtp = tech.vth_n, tech.vtp
    ln, lp = tech.lambda_n, tech.lambda_p
    vdd = tech.vdd

    i5 = ibias
    i1 = 0.5 * i5
    i7 = ibias * w7 / w58
    vcm = 0.5 * (spec.icmr_min + spec.icmr_max)
    vout = 0.5 * (spec.vout_min + spec.vout_max)

    m8 = mosfet.diode(ibias, kn * w58, vtn, ln)
    m3 = mosfet.diode(i1, kp * w34, vtp, lp)
    m6 = mosfet.bias(i7, max(vdd - vout, 0.0), kp * w6, vtp, lp)
    m7 = mosfet.bias(i7, max(vout, 0.0), kn * w7, vtn, ln)
    # V_SD4 follows V_SG6 because M4 and M6 share the first-stage output node
    m4 = mosfet.bias(i1, m6.vgs, kp * w34, vtp, lp)

    # V_DS of the input pair and tail depend on V_GS1; two passes settle it
    vds1 = vds2 = 0.25 * vdd
    for _ in range(3):
        m1 = mosfet.bias(i1, max(vds1, 0.0), kn * w12, vtn, ln)
        m2 = mosfet.bias(i1, max(vds2, 0.0), kn * w12, vtn, ln)
        vs = vcm - m1.vgs
        vds1 = vdd - m3.vgs - vs
        vds2 = vdd - m6.vgs - vs
    m5 = mosfet.bias(i5, max(vs, 0.0), kn * w58, vtn, ln)

    sat = (
        ("m1", vdd - m3.vgs - spec.icmr_max + vtn),
        ("m2", vdd - m6.vgs - spec.icmr_max + vtn),
        ("m3", vtp),
        ("m4", m6.vgs - m4.vov),
        ("m5", spec.icmr_min - m1.vgs - m5.vov),
        ("m6", vdd - spec.vout_max - m6.vov),
        ("m7", spec.vout_min - m7.vov),
        ("m8", m8.vgs - m8.vov),
    )

    av = m1.gm / (m2.gds + m4.gds) * m6.gm / (m6.gds + m7.gds)
    ugb = m1.gm / (2.0 * math.pi * spec.cc)
    p2 = m6.gm / (2.0 * math.pi * spec.cl)
    return PerformanceReport.scored(
        spec,
        gain_db=20.0 * math.log10(av),
        f3db=ugb / av,
        ugb=ugb,
        pm=90.0 - math.degrees(math.atan(ugb / p2)),
        sr=i5 / spec.cc * 1e-6,
        power=vdd * (ibias + i5 + i7),
        noise_psd=thermal_noise(m1.gm, (m3.gm,), tech.temperature),
        area=circuit_area(Topology.TWO_STAGE_MILLER, position, L),
        saturation_ok=all(m >= 0.0 for _, m in sat),
        saturation_margins=sat,
    )
