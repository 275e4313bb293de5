"""Normalized intensity-correlation estimators with batch-means error bars.

G2(tau) = <I_a(t) I_b(t+tau)> / (<I_a(t)> <I_b(t+tau)>) with all three
averages taken over the same overlap window of length (N - k) samples,
k = tau/dt; this removes the O(tau/T) normalization bias of full-trace
means.  Delays must sit on the sample grid (interpolating intensities would
smear phase-jump discontinuities) and correlation is linear, never circular.

The standard error comes from batch means: the overlap window is split into
``n_batches`` equal batches (default 20), the estimator is recomputed per
batch, and the spread of batch values / sqrt(n_batches) is reported.  With
the default geometry each batch spans >= 50 coherence times, so serial
correlation within a batch does not bias the error estimate much.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .bench import DetectorTraces
from .csvutil import fmt_float as _fmt
from .errors import InsufficientDataError, OffGridDelayError

SCAN_KINDS = ("cross", "self3", "self4")


@dataclass(frozen=True)
class CorrelationResult:
    """Estimated correlation at delay ``tau`` with batch-means standard error."""

    value: float
    tau: float
    n_samples: int
    std_error: float

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if not (self.std_error >= 0.0):
            raise ValueError("std_error must be >= 0")


def _delay_index(tau: float, dt: float) -> int:
    if not math.isfinite(tau) or tau < 0.0:
        raise ValueError("tau must be finite and >= 0")
    k = int(round(tau / dt))
    if abs(tau - k * dt) > 1e-9 * dt:
        raise OffGridDelayError(
            f"tau={tau!r} is not an integer multiple of dt={dt!r}"
        )
    return k


def _normalized_product_mean(x: np.ndarray, y: np.ndarray) -> float:
    # 1 + cov/(mx*my) == <xy>/(<x><y>) but exact (1.0) for constant inputs
    # and free of the large-term cancellation.
    mx = x.mean()
    my = y.mean()
    return 1.0 + float(np.mean((x - mx) * (y - my)) / (mx * my))


def _g2(x: np.ndarray, y: np.ndarray, dt: float, tau: float, n_batches: int) -> CorrelationResult:
    if n_batches < 2:
        raise ValueError("n_batches must be >= 2")
    k = _delay_index(tau, dt)
    n_total = len(x)
    if 2 * k > n_total:
        raise InsufficientDataError(
            f"tau={tau!r} exceeds half the record length {n_total * dt!r}"
        )
    n = n_total - k
    if n < n_batches:
        raise InsufficientDataError(
            f"overlap window of {n} samples is shorter than {n_batches} batches"
        )
    xw = x[:n]
    yw = y[k : k + n]
    value = _normalized_product_mean(xw, yw)
    m = n // n_batches
    xb = xw[: m * n_batches].reshape(n_batches, m)
    yb = yw[: m * n_batches].reshape(n_batches, m)
    bmx = xb.mean(axis=1, keepdims=True)
    bmy = yb.mean(axis=1, keepdims=True)
    batch_vals = 1.0 + ((xb - bmx) * (yb - bmy)).mean(axis=1) / (bmx * bmy)[:, 0]
    std_error = float(np.std(batch_vals, ddof=1) / math.sqrt(n_batches))
    return CorrelationResult(value=value, tau=k * dt, n_samples=n, std_error=std_error)


def g2_cross(traces: DetectorTraces, tau: float, n_batches: int = 20) -> CorrelationResult:
    """<I3(t) I4(t+tau)> / (<I3><I4>) over the overlap window."""
    return _g2(traces.i3, traces.i4, traces.dt, tau, n_batches)


def g2_self(traces: DetectorTraces, which: int, tau: float, n_batches: int = 20) -> CorrelationResult:
    """<I_i(t) I_i(t+tau)> / <I_i>^2 for detector ``which`` (3 or 4)."""
    if which == 3:
        series = traces.i3
    elif which == 4:
        series = traces.i4
    else:
        raise ValueError(f"unknown detector id {which!r}; expected 3 or 4")
    return _g2(series, series, traces.dt, tau, n_batches)


def g2_delay_scan(
    traces: DetectorTraces,
    kind: str,
    taus: Sequence[float],
    n_batches: int = 20,
) -> list[CorrelationResult]:
    """Apply the selected estimator over a delay grid, preserving order."""
    if kind == "cross":
        return [g2_cross(traces, tau, n_batches) for tau in taus]
    if kind == "self3":
        return [g2_self(traces, 3, tau, n_batches) for tau in taus]
    if kind == "self4":
        return [g2_self(traces, 4, tau, n_batches) for tau in taus]
    raise ValueError(f"unknown scan kind {kind!r}; expected one of {SCAN_KINDS}")


def save_correlations(path, rows: Sequence[tuple[str, CorrelationResult]]) -> None:
    """Write (kind, result) rows as CSV: tau_s,kind,value,std_error,n_samples."""
    lines = ["# columns: tau_s,kind,value,std_error,n_samples"]
    for kind, r in rows:
        lines.append(
            f"{_fmt(r.tau)},{kind},{_fmt(r.value)},{_fmt(r.std_error)},{r.n_samples}"
        )
    lines.append("")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines))
