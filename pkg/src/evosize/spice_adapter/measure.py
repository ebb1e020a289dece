"""Reading measurement markers out of simulator output."""

from __future__ import annotations

import math
import re
from decimal import Decimal, InvalidOperation

from ..circuit.spec import PerformanceReport, Topology

# marker name -> (report field, decimal shift from the printed SI value)
MARKERS = {
    "av_db": ("gain_db", 0),
    "f3db": ("f3db", 0),
    "ugb": ("ugb", 0),
    "pm": ("pm", 0),
    "sr": ("sr", -6),  # printed in V/s, reported in V/us
    "power": ("power", 0),
    "noise_psd": ("noise_psd", 0),
}

DEVICES = {
    Topology.TWO_STAGE_MILLER: ("m1", "m2", "m3", "m4", "m5", "m6", "m7", "m8"),
    Topology.FOLDED_CASCODE: ("m1", "m2", "m3", "m4", "m5", "m6", "m7", "m8", "m9",
                              "m10", "m11", "mbn", "mbp"),
}

_LINE = re.compile(r"^\s*([A-Za-z_][\w]*)\s*=\s*(\S+)")


class MeasurementParseError(ValueError):
    pass


def _scan(raw: str) -> dict[str, tuple[str, int, str]]:
    """Last occurrence of each ``name = value`` line: name -> (token, line number, line)."""
    found: dict[str, tuple[str, int, str]] = {}
    for lineno, line in enumerate(raw.splitlines(), start=1):
        m = _LINE.match(line)
        if m:
            found[m.group(1).lower()] = (m.group(2), lineno, line.rstrip())
    return found


def _number(name: str, entry: tuple[str, int, str], shift: int = 0) -> float:
    token, lineno, line = entry
    try:
        # decimal shifting keeps the printed digits exact
        value = float(Decimal(token).scaleb(shift))
    except (InvalidOperation, ValueError):
        raise MeasurementParseError(f"malformed value for {name!r} on line {lineno}: {line!r}") from None
    if math.isnan(value):
        raise MeasurementParseError(f"{name!r} is NaN on line {lineno}: {line!r}")
    return value


def parse_measurements(raw: str, topology: Topology | str) -> PerformanceReport:
    """Build a report from simulator output.

    Every metric marker and one ``sat_<device>`` marker per transistor must
    be present.  ``area`` is read when printed and left as NaN otherwise.
    Constraint margins are not filled in here.
    """
    topo = Topology(topology)
    found = _scan(raw)
    values: dict[str, float] = {}
    for marker, (field_name, shift) in MARKERS.items():
        if marker not in found:
            raise MeasurementParseError(f"simulator output has no {marker!r} measurement")
        values[field_name] = _number(marker, found[marker], shift)
    sat = []
    for dev in DEVICES[topo]:
        key = f"sat_{dev}"
        if key not in found:
            raise MeasurementParseError(f"simulator output has no {key!r} measurement")
        sat.append((dev, _number(key, found[key])))
    area = _number("area", found["area"]) if "area" in found else math.nan
    return PerformanceReport(**values, area=area,
                             saturation_ok=all(m >= 0.0 for _, m in sat),
                             saturation_margins=tuple(sat))


def format_measurements(report: PerformanceReport) -> str:
    """Render ``report`` the way the templates print it; parses back to an equal report."""
    lines = []
    for marker, (field_name, shift) in MARKERS.items():
        printed = Decimal(repr(report.metric(field_name))).scaleb(-shift)
        lines.append(f"{marker} = {printed}")
    lines += [f"sat_{dev} = {m!r}" for dev, m in report.saturation_margins]
    if not math.isnan(report.area):
        lines.append(f"area = {report.area!r}")
    return "\n".join(lines) + "\n"
