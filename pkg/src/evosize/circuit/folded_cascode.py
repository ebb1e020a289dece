"""Analytic model of the NMOS-input folded cascode op-amp.

Device roles (13 transistors):

* M1/M2   NMOS input pair, each carrying I_bias / 2
* M5      NMOS tail, mirrored 1:1 from the diode Mbn (W5 = Wbn)
* M3/M4   PMOS current sources feeding the folding nodes, mirrored 1:1
          from the diode Mbp (W3 = W4 = Wbp); each carries I_bias
* M10/M11 PMOS folded cascodes, carrying I_bias - I_bias/2
* M6/M7   NMOS cascodes of the output mirror
* M8/M9   NMOS bottom mirror devices

Mbn and Mbp are each fed by an ideal I_bias reference, so four branches
draw supply current.  Cascode gate voltages are assumed ideal: the headroom
left over in each stack is split evenly between its two devices.

Position order: [W12, W34bp, Wbn5, W67, W89, W1011, I_bias].
"""

from __future__ import annotations

import math
from typing import Sequence

from . import mosfet
from .area import circuit_area
from .spec import PerformanceReport, ProblemSpec, TechnologyCard, Topology
from .two_stage import _check_position, thermal_noise


def _par(a: float, b: float) -> float:
    return a * b / (a + b)


def _stack(headroom: float, upper: tuple, lower: tuple, lam: float, iterations: int = 3):
    """Bias two stacked devices sharing ``headroom`` volts.

    ``upper`` and ``lower`` are (current, beta, vth) of the cascode and the
    device below it.
    """
    iu, bu, vtu = upper
    il, bl, vtl = lower
    vds_u = vds_l = max(headroom, 0.0) / 2
    for _ in range(iterations):
        mu = mosfet.bias(iu, vds_u, bu, vtu, lam)
        ml = mosfet.bias(il, vds_l, bl, vtl, lam)
        slack = max(headroom - mu.vov - ml.vov, 0.0)
        vds_u, vds_l = mu.vov + slack / 2, ml.vov + slack / 2
    return mosfet.bias(iu, vds_u, bu, vtu, lam), mosfet.bias(il, vds_l, bl, vtl, lam)


def evaluate_folded_cascode(position: Sequence[float], spec: ProblemSpec,
                            tech: TechnologyCard) -> PerformanceReport:
    w12, w34, w5, w67, w89, w1011, ibias = _check_position(position, 7)
    L = tech.l_fixed
    kn, kp = tech.kp_n / L, tech.kp_p / L
    vtn, vtp = tech.vth_n, tech.vtp
    ln, lp = tech.lambda_n, tech.lambda_p
    vdd = tech.vdd

    i1 = 0.5 * ibias
    ic = ibias - i1
    vcm = 0.5 * (spec.icmr_min + spec.icmr_max)
    vout = 0.5 * (spec.vout_min + spec.vout_max)

    mbn = mosfet.diode(ibias, kn * w5, vtn, ln)
    mbp = mosfet.diode(ibias, kp * w34, vtp, lp)
    # PMOS side: M3 (source) under M10 (cascode) between VDD and the output
    m10, m3 = _stack(vdd - vout, (ic, kp * w1011, vtp), (ibias, kp * w34, vtp), lp)
    # NMOS side: M6 (cascode) over M8 (bottom) between the output and ground
    m6, m8 = _stack(vout, (ic, kn * w67, vtn), (ic, kn * w89, vtn), ln)

    vx = vdd - m3.vds
    vds1 = 0.25 * vdd
    for _ in range(3):
        m1 = mosfet.bias(i1, max(vds1, 0.0), kn * w12, vtn, ln)
        vs = vcm - m1.vgs
        vds1 = vx - vs
    m5 = mosfet.bias(ibias, max(vs, 0.0), kn * w5, vtn, ln)

    top = vdd - spec.vout_max - m3.vov - m10.vov
    bottom = spec.vout_min - m6.vov - m8.vov
    # V_DS1 - V_ov1 with the common mode at the top of the ICMR
    inp = vx - spec.icmr_max + vtn
    sat = (
        ("m1", inp), ("m2", inp),
        ("m3", top), ("m4", top),
        ("m5", spec.icmr_min - m1.vgs - m5.vov),
        ("m6", bottom), ("m7", bottom), ("m8", bottom), ("m9", bottom),
        ("m10", top), ("m11", top),
        ("mbn", mbn.vgs - mbn.vov), ("mbp", mbp.vgs - mbp.vov),
    )

    r_up = m10.ro + _par(m3.ro, m1.ro) * (1.0 + m10.gm * m10.ro)
    r_dn = m6.ro + m8.ro * (1.0 + m6.gm * m6.ro)
    av = m1.gm * _par(r_up, r_dn)
    ugb = m1.gm / (2.0 * math.pi * spec.cl)
    # folding-node capacitance: cascode gate plus drain sides of M1 and M3
    cx = tech.cox * L * ((2.0 / 3.0) * w1011 + 0.5 * (w12 + w34))
    p_nd = m10.gm / (2.0 * math.pi * cx)
    return PerformanceReport.scored(
        spec,
        gain_db=20.0 * math.log10(av),
        f3db=ugb / av,
        ugb=ugb,
        pm=90.0 - math.degrees(math.atan(ugb / p_nd)),
        sr=min(ibias, ic) / spec.cl * 1e-6,
        power=vdd * 4.0 * ibias,
        noise_psd=thermal_noise(m1.gm, (m3.gm, m8.gm), tech.temperature),
        area=circuit_area(Topology.FOLDED_CASCODE, position, L),
        saturation_ok=all(m >= 0.0 for _, m in sat),
        saturation_margins=sat,
    )
