"""First-order square-law MOSFET with channel-length modulation.

    I_D = 1/2 * beta * (V_GS - V_th)^2 * (1 + lambda * V_DS),  beta = kp * W / L

Voltages are magnitudes, so the same functions serve NMOS and PMOS
devices.  The small-signal quantities are the exact partial derivatives of
the current equation at the operating point; for lambda * V_DS -> 0 they
reduce to the hand-analysis forms sqrt(2 beta I_D) and 1 / (lambda I_D).
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def drain_current(vgs: float, vds: float, beta: float, vth: float, lam: float) -> float:
    vov = vgs - vth
    if vov <= 0.0:
        return 0.0
    return 0.5 * beta * vov * vov * (1.0 + lam * vds)


@dataclass(frozen=True)
class OperatingPoint:
    i_d: float
    vds: float
    vov: float
    vgs: float
    gm: float
    gds: float

    @property
    def ro(self) -> float:
        return 1.0 / self.gds


def bias(i_d: float, vds: float, beta: float, vth: float, lam: float) -> OperatingPoint:
    """Operating point of a saturated device carrying ``i_d`` at ``vds``."""
    clm = 1.0 + lam * vds
    vov = math.sqrt(2.0 * i_d / (beta * clm))
    gm = math.sqrt(2.0 * beta * i_d * clm)
    gds = lam * i_d / clm
    return OperatingPoint(i_d, vds, vov, vth + vov, gm, gds)


def diode(i_d: float, beta: float, vth: float, lam: float, iterations: int = 50) -> OperatingPoint:
    """Diode-connected device (V_DS = V_GS).

    The overdrive v solves  beta*lam/2 * v^3 + beta*(1 + lam*vth)/2 * v^2 = I_D;
    Newton's method from the lambda-free guess (which lies above the root)
    descends monotonically.
    """
    a = 0.5 * beta * lam
    b = 0.5 * beta * (1.0 + lam * vth)
    v = math.sqrt(i_d / b)
    for _ in range(iterations):
        step = (a * v + b) * v * v - i_d
        step /= (3.0 * a * v + 2.0 * b) * v
        v -= step
        if abs(step) <= 1e-15 * v:
            break
    return bias(i_d, vth + v, beta, vth, lam)


def overdrive(i_d: float, beta: float) -> float:
    """Overdrive ignoring channel-length modulation; used for bound derivation."""
    return math.sqrt(2.0 * i_d / beta)


def beta_for(i_d: float, vov: float) -> float:
    """Inverse of :func:`overdrive`: the beta that gives ``vov`` at ``i_d``."""
    return 2.0 * i_d / (vov * vov)
