"""Mach-Zehnder polarization bench.

Source 1 enters right-circular, source 2 left-circular (the quarter-wave
plates are baked into this assignment).  The recombining beam splitter
contributes 1/sqrt(2) per port and a sign epsilon (+1 at detector 3, -1 at
detector 4); each detector sits behind a linear polariser.  Per sample the
detector field is

    E_i = (1/sqrt(2)) P_i (eps_i P_L E2 u_i2  +  P_R E1 u_i1)

with u_i1 = 1 and u_i2 = e^{i phi_d} (the arm-2 propagation factor carries
the dynamical phase), and the recorded intensity is |E_i|^2 summed over the
two polarization components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .csvutil import fmt_float as _fmt
from .csvutil import parse_dt_header
from .errors import IncompatibleTracesError, TraceFormatError
from .source import FieldTrace

EPSILON_3 = 1.0
EPSILON_4 = -1.0


@dataclass(frozen=True)
class BenchConfig:
    """Polariser angles (radians), dynamical phase, source intensity ratio."""

    phi3: float
    phi4: float
    phi_d: float = 0.0
    balance: float = 1.0

    def __post_init__(self):
        for name in ("phi3", "phi4", "phi_d", "balance"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not (self.balance > 0.0):
            raise ValueError("balance must be > 0")


@dataclass(frozen=True, eq=False)
class DetectorTraces:
    """Paired nonnegative intensity time series at detectors 3 and 4."""

    dt: float
    i3: np.ndarray
    i4: np.ndarray

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ValueError("dt must be positive and finite")
        i3 = np.asarray(self.i3, dtype=float)
        i4 = np.asarray(self.i4, dtype=float)
        if i3.ndim != 1 or i4.ndim != 1 or len(i3) != len(i4) or len(i3) == 0:
            raise ValueError("i3 and i4 must be nonempty 1-d arrays of equal length")
        if not (np.all(np.isfinite(i3)) and np.all(np.isfinite(i4))):
            raise ValueError("intensities must be finite")
        if np.any(i3 < 0.0) or np.any(i4 < 0.0):
            raise ValueError("intensities must be nonnegative")
        i3, i4 = i3.copy(), i4.copy()
        i3.flags.writeable = False
        i4.flags.writeable = False
        object.__setattr__(self, "i3", i3)
        object.__setattr__(self, "i4", i4)

    def __len__(self) -> int:
        return len(self.i3)


def propagate(
    e1: FieldTrace,
    e2: FieldTrace,
    config: BenchConfig,
    polarizers: bool = True,
) -> DetectorTraces:
    """Push two source traces through the bench, sample by sample.

    ``config.balance`` scales the source-2 intensity before the bench so
    that <I2>/<I1> = balance for equal-amplitude inputs.  ``polarizers=False``
    replaces both P_i by the identity (test hook for the lossless part);
    the 1/sqrt(2) splitter factors and the epsilon sign remain.
    """
    if e1.dt != e2.dt:
        raise IncompatibleTracesError(f"dt mismatch: {e1.dt!r} vs {e2.dt!r}")
    if len(e1.samples) != len(e2.samples):
        raise IncompatibleTracesError(
            f"length mismatch: {len(e1.samples)} vs {len(e2.samples)}"
        )
    f1 = e1.samples
    f2 = e2.samples * (math.sqrt(config.balance) * np.exp(1j * config.phi_d))
    intensities = []
    for phi_i, eps_i in ((config.phi3, EPSILON_3), (config.phi4, EPSILON_4)):
        if polarizers:
            # E_i = (1/sqrt(2)) <phi_i|v> |phi_i> with v = eps*f2|L> + f1|R>;
            # the R/L components of |phi_i> are e^{-+i phi_i}/sqrt(2).
            amp = 0.5 * (eps_i * f2 * np.exp(-1j * phi_i) + f1 * np.exp(1j * phi_i))
            intensities.append(amp.real ** 2 + amp.imag ** 2)
        else:
            intensities.append(0.5 * ((f1.conj() * f1).real + (f2.conj() * f2).real))
    return DetectorTraces(dt=e1.dt, i3=intensities[0], i4=intensities[1])


def mean_intensity(traces: DetectorTraces, which: int) -> float:
    """Time-averaged intensity at detector 3 or 4."""
    if which == 3:
        return float(np.mean(traces.i3))
    if which == 4:
        return float(np.mean(traces.i4))
    raise ValueError(f"unknown detector id {which!r}; expected 3 or 4")


# --- CSV export/import: "# dt=<seconds>" header, then "i3,i4" rows ---------


def save_detector_traces(traces: DetectorTraces, path) -> None:
    lines = [f"# dt={_fmt(traces.dt)}"]
    lines.extend(f"{_fmt(a)},{_fmt(b)}" for a, b in zip(traces.i3, traces.i4))
    lines.append("")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines))


def load_detector_traces(path) -> DetectorTraces:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise TraceFormatError(1, "empty file")
    dt = parse_dt_header(lines[0], 1)
    i3_parts, i4_parts = [], []
    for i, line in enumerate(lines[1:], start=2):
        if not line or line.startswith("#"):
            continue
        cells = line.split(",")
        if len(cells) != 2:
            raise TraceFormatError(i, f"expected 'i3,i4', got {line!r}")
        try:
            a, b = float(cells[0]), float(cells[1])
        except ValueError:
            raise TraceFormatError(i, f"unparseable number in {line!r}") from None
        if a < 0.0 or b < 0.0:
            raise TraceFormatError(i, f"negative intensity in {line!r}")
        i3_parts.append(a)
        i4_parts.append(b)
    if not i3_parts:
        raise TraceFormatError(len(lines), "no samples")
    try:
        return DetectorTraces(dt=dt, i3=np.array(i3_parts), i4=np.array(i4_parts))
    except ValueError as exc:
        raise TraceFormatError(len(lines), str(exc)) from None
