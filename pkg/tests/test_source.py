import math

import numpy as np
import pytest
from scipy import integrate, stats

from hbtsim.errors import (
    InsufficientOverlapError,
    SamplingTooCoarseError,
    TraceFormatError,
)
from hbtsim.source import (
    FieldTrace,
    PhaseNoiseConfig,
    default_source_config,
    first_order_coherence,
    generate_trace,
    load_field_trace,
    phase_jump_process,
    sample_dwell,
    save_field_trace,
    truncated_dwell_mean,
)

CFG = default_source_config()
T_C = CFG.t_c


def quad_dwell_mean(cfg: PhaseNoiseConfig) -> float:
    """Dwell-mean oracle by numerical quadrature of the renormalized density."""
    density = lambda t: math.exp(-t / cfg.t_c) / cfg.t_c
    norm, _ = integrate.quad(density, cfg.t_min, cfg.t_max)
    mean, _ = integrate.quad(lambda t: t * density(t), cfg.t_min, cfg.t_max)
    return mean / norm


def test_config_invariants():
    with pytest.raises(ValueError):
        PhaseNoiseConfig(t_c=1e-5, t_min=2e-5, t_max=1e-4)  # t_min > t_c
    with pytest.raises(ValueError):
        PhaseNoiseConfig(t_c=1e-5, t_min=1e-6, t_max=5e-6)  # t_max < t_c
    with pytest.raises(ValueError):
        PhaseNoiseConfig(t_c=1e-5, t_min=1e-6, t_max=1e-4, amplitude=0.0)
    with pytest.raises(ValueError):
        PhaseNoiseConfig(t_c=1e-5, t_min=1e-6, t_max=1e-4, seed=-1)


def test_sample_dwell_endpoints():
    assert sample_dwell(CFG, 0.0) == pytest.approx(CFG.t_min, rel=1e-12)
    near_one = sample_dwell(CFG, 1.0 - 1e-12)
    assert near_one == pytest.approx(CFG.t_max, rel=1e-5)
    assert near_one <= CFG.t_max * (1 + 1e-12)


def test_sample_dwell_rejects_bad_u():
    for bad in (-0.1, 1.0, 1.5, math.nan):
        with pytest.raises(ValueError):
            sample_dwell(CFG, bad)
    with pytest.raises(ValueError):
        sample_dwell(CFG, np.array([0.2, 1.0]))


def test_sample_dwell_monotone_in_u():
    u = np.linspace(0.0, 0.999999, 1000)
    t = sample_dwell(CFG, u)
    assert np.all(np.diff(t) >= 0)
    assert t[-1] > t[0]
    assert np.all((t >= CFG.t_min) & (t <= CFG.t_max))


def test_sample_dwell_mean_matches_quadrature():
    oracle = quad_dwell_mean(CFG)
    # frozen reference value of the oracle itself (seconds)
    assert oracle == pytest.approx(1.0995032457e-05, rel=1e-9)
    assert truncated_dwell_mean(CFG) == pytest.approx(oracle, rel=1e-12)
    rng = np.random.default_rng(3)
    sample_mean = float(np.mean(sample_dwell(CFG, rng.random(10 ** 6))))
    assert abs(sample_mean / oracle - 1.0) < 0.005


def test_dwell_histogram_chi_square():
    rng = np.random.default_rng(3)
    draws = sample_dwell(CFG, rng.random(10 ** 6))
    # 50 equal-probability bins via the inverse CDF
    edges = sample_dwell(CFG, np.linspace(0.0, 1.0, 51)[:-1])
    edges = np.append(edges, CFG.t_max)
    counts, _ = np.histogram(draws, bins=edges)
    assert counts.sum() == 10 ** 6
    _, p_value = stats.chisquare(counts)
    assert p_value >= 0.001


def test_jump_phases_uniform_ks():
    n_jumps = 10 ** 5
    duration = 1.05 * n_jumps * truncated_dwell_mean(CFG)
    _, levels = phase_jump_process(CFG, duration, np.random.default_rng(3))
    assert len(levels) - 1 >= n_jumps
    phases = np.mod(levels[1 : n_jumps + 1], 2 * math.pi) / (2 * math.pi)
    assert stats.kstest(phases, "uniform").statistic < 0.01


def test_trace_modulus_and_determinism():
    cfg = PhaseNoiseConfig(t_c=10e-6, t_min=1e-6, t_max=100e-6, amplitude=2.5, seed=8)
    a = generate_trace(cfg, 2e-3, 1e-7)
    b = generate_trace(cfg, 2e-3, 1e-7)
    assert np.array_equal(a.samples, b.samples)
    assert len(a.samples) == 20000
    mods = np.abs(a.samples)
    assert np.max(np.abs(mods - cfg.amplitude)) < 1e-12 * cfg.amplitude
    other = generate_trace(
        PhaseNoiseConfig(t_c=10e-6, t_min=1e-6, t_max=100e-6, amplitude=2.5, seed=9),
        2e-3,
        1e-7,
    )
    assert not np.array_equal(a.samples, other.samples)


def test_trace_intensity_is_flat():
    trace = generate_trace(CFG, 2e-3, 1e-7, np.random.default_rng(2))
    intensity = np.abs(trace.samples) ** 2
    assert np.std(intensity) / np.mean(intensity) < 1e-12
    # hence <I(t)I(t+tau)>/<I>^2 = 1 at any delay
    for k in (0, 37, 500):
        num = np.mean(intensity[: len(intensity) - k] * intensity[k:])
        assert num / np.mean(intensity) ** 2 == pytest.approx(1.0, abs=1e-12)


def test_generate_rejects_coarse_dt():
    with pytest.raises(SamplingTooCoarseError):
        generate_trace(CFG, 2e-3, 2 * CFG.t_min)


def test_generate_warns_on_marginal_settings():
    with pytest.warns(UserWarning):
        generate_trace(CFG, 2e-3, CFG.t_min / 2)  # dt above t_min/4
    with pytest.warns(UserWarning):
        generate_trace(CFG, 50 * T_C, 1e-7)  # short record


def test_g1_zero_delay_is_exactly_one():
    trace = generate_trace(CFG, 2e-3, 1e-7, np.random.default_rng(0))
    assert first_order_coherence(trace, 0.0) == 1.0 + 0.0j


def test_g1_insufficient_overlap():
    trace = generate_trace(CFG, 2e-3, 1e-7, np.random.default_rng(0))
    with pytest.raises(InsufficientOverlapError):
        first_order_coherence(trace, 1.5e-3)
    with pytest.raises(ValueError):
        first_order_coherence(trace, -1e-6)


def test_g1_decay_monotone_over_seeds():
    taus = [k * T_C for k in range(6)]
    acc = np.zeros(len(taus))
    for seed in range(50):
        trace = generate_trace(CFG, 2e-2, 1e-7, np.random.default_rng(seed))
        acc += np.array([abs(first_order_coherence(trace, t)) for t in taus])
    acc /= 50
    assert acc[0] == pytest.approx(1.0, abs=1e-12)
    assert np.all(np.diff(acc) <= 0)


def test_g1_long_delay_is_small():
    trace = generate_trace(CFG, 2e-2, 1e-7, np.random.default_rng(9))
    assert abs(first_order_coherence(trace, 5 * T_C)) < 0.05


def test_independent_seeds_are_incoherent():
    def cross_coherence(duration, seed_a, seed_b):
        a = generate_trace(CFG, duration, 1e-7, np.random.default_rng(seed_a))
        b = generate_trace(CFG, duration, 1e-7, np.random.default_rng(seed_b))
        return abs(np.mean(a.samples.conj() * b.samples))

    assert cross_coherence(2000 * T_C, 5, 6) < 0.02
    # and the residual coherence shrinks with record length
    short = np.mean([cross_coherence(500 * T_C, 10 + k, 40 + k) for k in range(5)])
    long = np.mean([cross_coherence(8000 * T_C, 10 + k, 40 + k) for k in range(5)])
    assert long < short


def test_field_trace_csv_roundtrip(tmp_path):
    trace = generate_trace(CFG, 1e-4, 1e-7, np.random.default_rng(21))
    path = tmp_path / "trace.csv"
    save_field_trace(trace, path)
    text = path.read_text()
    assert text.startswith("# dt=1e-07\n")
    assert "\r" not in text
    back = load_field_trace(path)
    assert back.dt == trace.dt
    assert np.array_equal(back.samples, trace.samples)


def test_field_trace_csv_errors(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0.1,0.2\n")
    with pytest.raises(TraceFormatError, match="line 1"):
        load_field_trace(path)
    path.write_text("# dt=1e-07\n0.1,0.2\n0.3\n")
    with pytest.raises(TraceFormatError, match="line 3"):
        load_field_trace(path)
    path.write_text("# dt=1e-07\n0.1,zap\n")
    with pytest.raises(TraceFormatError, match="line 2"):
        load_field_trace(path)


def test_field_trace_validation():
    with pytest.raises(ValueError):
        FieldTrace(dt=0.0, samples=np.ones(4, dtype=complex))
    with pytest.raises(ValueError):
        FieldTrace(dt=1e-7, samples=np.array([], dtype=complex))
    with pytest.raises(ValueError):
        FieldTrace(dt=1e-7, samples=np.array([1.0, math.nan], dtype=complex))
