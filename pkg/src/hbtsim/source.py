"""Phase-noise-only classical light sources.

A source emits a constant-modulus complex field whose phase is piecewise
constant: it dwells for a random time T, then jumps by an angle drawn
uniformly on the circle.  Dwell times follow an exponential of scale ``t_c``
truncated to [t_min, t_max] and renormalized there, so the coherence of the
field is lost on the scale t_c while every dwell resolves the sample grid.
The instantaneous intensity |E|^2 never fluctuates: all the noise is in the
phase.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .csvutil import fmt_float as _fmt
from .csvutil import parse_dt_header
from .errors import InsufficientOverlapError, SamplingTooCoarseError, TraceFormatError


@dataclass(frozen=True)
class PhaseNoiseConfig:
    """Dwell-time scale t_c, truncation bounds [t_min, t_max] (seconds),
    field amplitude and RNG seed."""

    t_c: float
    t_min: float
    t_max: float
    amplitude: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if not (0.0 < self.t_min < self.t_c < self.t_max):
            raise ValueError("require 0 < t_min < t_c < t_max")
        if not (self.amplitude > 0.0):
            raise ValueError("amplitude must be > 0")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2 ** 64):
            raise ValueError("seed must be a 64-bit non-negative integer")


def default_source_config(seed: int = 0) -> PhaseNoiseConfig:
    """The bench-scale defaults: t_c = 10 us, dwells in [1 us, 100 us]."""
    return PhaseNoiseConfig(t_c=10e-6, t_min=1e-6, t_max=100e-6, amplitude=1.0, seed=seed)


@dataclass(frozen=True, eq=False)
class FieldTrace:
    """Uniformly sampled complex field: sample period ``dt`` and samples."""

    dt: float
    samples: np.ndarray

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ValueError("dt must be positive and finite")
        samples = np.asarray(self.samples, dtype=complex)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("samples must be a nonempty 1-d array")
        if not np.all(np.isfinite(samples)):
            raise ValueError("samples must be finite")
        samples = samples.copy()
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)

    @property
    def duration(self) -> float:
        return len(self.samples) * self.dt


def sample_dwell(config: PhaseNoiseConfig, u):
    """Dwell time for uniform variate(s) ``u`` in [0, 1), by inverse CDF.

    T = -t_c * ln(e^{-t_min/t_c} - u * (e^{-t_min/t_c} - e^{-t_max/t_c})),
    the quantile function of the exponential density renormalized on
    [t_min, t_max]; u = 0 gives t_min, u -> 1 gives t_max.  Accepts scalars
    or arrays.
    """
    u_arr = np.asarray(u, dtype=float)
    if np.any(u_arr < 0.0) or np.any(u_arr >= 1.0) or not np.all(np.isfinite(u_arr)):
        raise ValueError("u must lie in [0, 1)")
    lo = math.exp(-config.t_min / config.t_c)
    hi = math.exp(-config.t_max / config.t_c)
    t = -config.t_c * np.log(lo - u_arr * (lo - hi))
    t = np.clip(t, config.t_min, config.t_max)  # guard endpoint rounding
    return float(t) if np.isscalar(u) or u_arr.ndim == 0 else t


def truncated_dwell_mean(config: PhaseNoiseConfig) -> float:
    """Mean dwell time of the renormalized truncated-exponential density."""
    tc = config.t_c
    a, b = config.t_min / tc, config.t_max / tc
    num = tc * ((1.0 + a) * math.exp(-a) - (1.0 + b) * math.exp(-b))
    den = math.exp(-a) - math.exp(-b)
    return num / den


def phase_jump_process(
    config: PhaseNoiseConfig, duration: float, rng: np.random.Generator | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Jump times in (0, duration] and phase levels (initial phase first).

    ``levels[i]`` is the phase held on [jump_times[i-1], jump_times[i]); the
    initial phase ``levels[0]`` is itself uniform on [0, 2*pi).  Jumps are
    increments uniform on [0, 2*pi), so the level sequence is i.i.d. uniform
    on the circle (mod 2*pi).  Deterministic for a given seed/stream.
    """
    if not (math.isfinite(duration) and duration > 0.0):
        raise ValueError("duration must be positive and finite")
    if rng is None:
        rng = np.random.default_rng(np.random.SeedSequence(config.seed))
    mean_dwell = truncated_dwell_mean(config)
    chunk = int(duration / mean_dwell * 1.25) + 16
    dwells = sample_dwell(config, rng.random(chunk))
    total = float(np.sum(dwells))
    while total < duration:
        extra = sample_dwell(config, rng.random(chunk // 2 + 16))
        dwells = np.concatenate([dwells, extra])
        total += float(np.sum(extra))
    jump_times = np.cumsum(dwells)
    jump_times = jump_times[jump_times <= duration]
    theta0 = 2.0 * math.pi * rng.random()
    deltas = 2.0 * math.pi * rng.random(len(jump_times))
    levels = theta0 + np.concatenate([[0.0], np.cumsum(deltas)])
    return jump_times, levels


def generate_trace(
    config: PhaseNoiseConfig,
    duration: float,
    dt: float,
    rng: np.random.Generator | None = None,
) -> FieldTrace:
    """Sample the phase-noise field on a uniform grid of period ``dt``.

    A jump landing between sample instants takes effect at the next sample
    (sample-and-hold), unbiased for dt << t_min.  dt > t_min would alias
    whole dwells and raises SamplingTooCoarseError; dt above the recommended
    t_min/4, or duration below the recommended 100*t_c, only warns.
    """
    if not (math.isfinite(dt) and dt > 0.0):
        raise ValueError("dt must be positive and finite")
    if dt > config.t_min:
        raise SamplingTooCoarseError(
            f"dt={dt!r} exceeds t_min={config.t_min!r}; phase jumps would alias"
        )
    if dt > config.t_min / 4.0:
        warnings.warn("dt above t_min/4; dwell discretization is coarse", stacklevel=2)
    if duration < 100.0 * config.t_c:
        warnings.warn("duration below 100*t_c; estimators will be noisy", stacklevel=2)
    jump_times, levels = phase_jump_process(config, duration, rng)
    n = int(round(duration / dt))
    t = np.arange(n) * dt
    theta = levels[np.searchsorted(jump_times, t, side="right")]
    return FieldTrace(dt=dt, samples=config.amplitude * np.exp(1j * theta))


def first_order_coherence(trace: FieldTrace, tau: float) -> complex:
    """Normalized field autocorrelation <conj(E(t)) E(t+tau)> / <|E(t)|^2>.

    Both averages run over the same overlap window.  ``tau`` is rounded to
    the sample grid; tau = 0 returns exactly 1.  Delays of half the trace or
    more raise InsufficientOverlapError.
    """
    if not (math.isfinite(tau) and tau >= 0.0):
        raise ValueError("tau must be finite and >= 0")
    k = int(round(tau / trace.dt))
    n_total = len(trace.samples)
    if 2 * k >= n_total:
        raise InsufficientOverlapError(
            f"tau={tau!r} leaves less than half the trace overlapping"
        )
    if k == 0:
        return 1.0 + 0.0j  # numerator and denominator coincide identically
    n = n_total - k
    head = trace.samples[:n]
    num = np.mean(head.conj() * trace.samples[k : k + n])
    den = np.mean((head.conj() * head).real)
    return complex(num / den)


# --- CSV export/import: "# dt=<seconds>" header, then "re,im" rows ---------


def save_field_trace(trace: FieldTrace, path) -> None:
    lines = [f"# dt={_fmt(trace.dt)}"]
    lines.extend(f"{_fmt(z.real)},{_fmt(z.imag)}" for z in trace.samples)
    lines.append("")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines))


def load_field_trace(path) -> FieldTrace:
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise TraceFormatError(1, "empty file")
    dt = parse_dt_header(lines[0], 1)
    re_parts, im_parts = [], []
    for i, line in enumerate(lines[1:], start=2):
        if not line or line.startswith("#"):
            continue
        cells = line.split(",")
        if len(cells) != 2:
            raise TraceFormatError(i, f"expected 're,im', got {line!r}")
        try:
            re_parts.append(float(cells[0]))
            im_parts.append(float(cells[1]))
        except ValueError:
            raise TraceFormatError(i, f"unparseable number in {line!r}") from None
    if not re_parts:
        raise TraceFormatError(len(lines), "no samples")
    return FieldTrace(dt=dt, samples=np.array(re_parts) + 1j * np.array(im_parts))
