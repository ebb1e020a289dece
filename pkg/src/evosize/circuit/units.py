"""Parsing of human-written quantities such as ``200 fF`` or ``100 V/us``.

Everything is converted to SI, except slew rate which the reports carry in
V/us (so ``100 V/us`` parses to 100.0 and ``1e8 V/s`` to 100.0 as well).
"""

from __future__ import annotations

import re
from decimal import Decimal

# decimal exponents, applied by shifting so "60 nm" is exactly the float 60e-9
_PREFIX = {
    "f": -15, "p": -12, "n": -9, "u": -6, "µ": -6,
    "m": -3, "k": 3, "M": 6, "G": 9,
}

_BASE = {
    "": 0, "V": 0, "A": 0, "F": 0, "m": 0, "W": 0, "Hz": 0,
    "K": 0, "s": 0, "dB": 0, "deg": 0, "1/V": 0, "F/m^2": 0,
    "A/V^2": 0, "m^2": 0, "V/rtHz": 0, "V/sqrtHz": 0,
    "V/us": 0, "V/µs": 0, "V/s": -6,
}

_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"
_NUMBER = re.compile(rf"^\s*({_NUM})\s*(.*?)\s*$")
_RATIO = re.compile(rf"^\s*({_NUM})\s*/\s*({_NUM})\s*$")


def parse_quantity(text: str) -> float:
    r = _RATIO.match(str(text))
    if r:
        return float(r.group(1)) / float(r.group(2))
    m = _NUMBER.match(str(text))
    if not m:
        raise ValueError(f"not a quantity: {text!r}")
    value, unit = Decimal(m.group(1)), m.group(2)
    if unit in _BASE:
        return float(value.scaleb(_BASE[unit]))
    if unit[:1] in _PREFIX and unit[1:] in _BASE and unit[1:]:
        scale = _PREFIX[unit[0]]
        if unit[1:] in ("m^2", "F/m^2"):
            raise ValueError(f"prefixed area units are ambiguous: {text!r}")
        return float(value.scaleb(scale + _BASE[unit[1:]]))
    raise ValueError(f"unknown unit {unit!r} in {text!r}")
