from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from ..core import ContractError
from .spec import MULTIPLICITY, Topology


def area_fitness(widths: Sequence[float], lengths: Sequence[float]) -> float:
    """Gate area, sum of W_i * L_i over every physical device (m^2)."""
    w = np.asarray(widths, dtype=float)
    l = np.asarray(lengths, dtype=float)
    if w.shape != l.shape:
        raise ContractError(f"{w.size} widths but {l.size} lengths")
    return float(np.dot(w, l))


def expand_widths(topology: Topology, position: Sequence[float]) -> np.ndarray:
    """Per-device widths from the optimizer's matched-group widths.

    The bias current (last entry) is dropped.
    """
    mult = MULTIPLICITY[Topology(topology)]
    x = np.asarray(position, dtype=float)
    if x.size != len(mult) + 1:
        raise ContractError(f"{topology.value} expects {len(mult) + 1} variables, got {x.size}")
    return np.repeat(x[:-1], mult)


def circuit_area(topology: Topology, position: Sequence[float], length: float) -> float:
    """Area when every device shares one channel length."""
    mult = MULTIPLICITY[Topology(topology)]
    if len(position) != len(mult) + 1:
        raise ContractError(f"{topology.value} expects {len(mult) + 1} variables, got {len(position)}")
    return length * math.fsum(k * float(w) for k, w in zip(mult, position))
