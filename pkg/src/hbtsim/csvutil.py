"""Shared bits of the CSV trace/results formats."""

from __future__ import annotations

import math

from .errors import TraceFormatError


def fmt_float(x: float) -> str:
    """Shortest decimal form that round-trips to the same binary value."""
    return repr(float(x))


def parse_dt_header(line: str, line_number: int) -> float:
    if not line.startswith("# dt="):
        raise TraceFormatError(line_number, "missing '# dt=<seconds>' header")
    try:
        dt = float(line[len("# dt=") :])
    except ValueError:
        raise TraceFormatError(line_number, "unparseable dt header") from None
    if not (math.isfinite(dt) and dt > 0.0):
        raise TraceFormatError(line_number, "dt must be positive and finite")
    return dt
