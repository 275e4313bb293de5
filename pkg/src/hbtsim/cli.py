"""Command-line driver: ``hbt simulate|sweep|analyze|predict``.

Configuration is a flat key-value text file (``section.key = value``) in SI
units; angle values accept a ``deg`` suffix.  All randomness flows from the
single ``sim.seed`` (``--seed`` overrides it): identical configs give
byte-identical output files, regardless of the worker count.  Exit codes:
0 success, 2 usage/config/data error, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .bench import BenchConfig, load_detector_traces, save_detector_traces
from .correlate import g2_delay_scan
from .csvutil import fmt_float as _fmt
from .errors import ConfigError
from .oracle import (
    audit_survivor_sum,
    predict_g2_cross,
    predict_g2_self,
    solid_angle_of_setup,
    term_audit,
)
from .pipeline import PointEstimates, estimate_point, simulate_detectors
from .source import PhaseNoiseConfig


@dataclass(frozen=True)
class SimConfig:
    """Sample period, record length, master seed and repeats per setting."""

    dt: float = 1e-7
    duration: float = 2e-2
    seed: int = 12345
    repeats: int = 1

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0.0):
            raise ValueError("dt must be positive and finite")
        if not (math.isfinite(self.duration) and self.duration > 0.0):
            raise ValueError("duration must be positive and finite")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2 ** 63):
            raise ValueError("seed must be a non-negative 63-bit integer")
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")


@dataclass(frozen=True)
class SweepConfig:
    """Polariser-angle sweep grid and delay grid."""

    phi34_start: float = 0.0
    phi34_end: float = 2.0 * math.pi
    phi34_steps: int = 13
    tau_max: float = 5e-5
    tau_steps: int = 11

    def __post_init__(self):
        if self.phi34_steps < 2:
            raise ValueError("phi34_steps must be >= 2")
        if self.tau_steps < 1:
            raise ValueError("tau_steps must be >= 1")
        if not (math.isfinite(self.tau_max) and self.tau_max >= 0.0):
            raise ValueError("tau_max must be finite and >= 0")


@dataclass(frozen=True)
class RunConfig:
    source: PhaseNoiseConfig
    bench: BenchConfig
    sim: SimConfig
    sweep: SweepConfig

    def validate(self) -> None:
        if self.sweep.tau_max > self.sim.duration / 2.0:
            raise ConfigError("sweep.tau_max", "must not exceed sim.duration/2")
        if self.sim.dt > self.source.t_min:
            raise ConfigError("sim.dt", "must not exceed source.t_min")


def default_run_config() -> RunConfig:
    return RunConfig(
        source=PhaseNoiseConfig(t_c=10e-6, t_min=1e-6, t_max=100e-6, amplitude=1.0, seed=12345),
        bench=BenchConfig(phi3=0.0, phi4=0.5 * math.pi, phi_d=0.0, balance=1.0),
        sim=SimConfig(),
        sweep=SweepConfig(),
    )


# --- config file parsing ----------------------------------------------------

_FLOAT_KEYS = {
    "source.t_c", "source.t_min", "source.t_max", "source.amplitude",
    "bench.balance", "sim.dt", "sim.duration", "sweep.tau_max",
}
_ANGLE_KEYS = {
    "bench.phi3", "bench.phi4", "bench.phi_d",
    "sweep.phi34_start", "sweep.phi34_end",
}
_INT_KEYS = {"source.seed", "sim.seed", "sim.repeats", "sweep.phi34_steps", "sweep.tau_steps"}


def parse_angle(text: str, field: str = "angle") -> float:
    """Angle in radians; a trailing ``deg`` marks degrees."""
    text = text.strip()
    try:
        if text.endswith("deg"):
            return math.radians(float(text[:-3].strip()))
        return float(text)
    except ValueError:
        raise ConfigError(field, f"unparseable angle {text!r}") from None


def parse_config_file(path) -> RunConfig:
    values: dict[str, object] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}", f"expected 'key = value', got {line!r}")
            key, _, text = line.partition("=")
            key = key.strip()
            text = text.strip()
            try:
                if key in _FLOAT_KEYS:
                    values[key] = float(text)
                elif key in _ANGLE_KEYS:
                    values[key] = parse_angle(text, key)
                elif key in _INT_KEYS:
                    values[key] = int(text)
                else:
                    raise ConfigError(key, "unknown configuration key")
            except ValueError as exc:
                if isinstance(exc, ConfigError):
                    raise
                raise ConfigError(key, f"unparseable value {text!r}") from None
    return build_run_config(values)


def build_run_config(values: dict[str, object]) -> RunConfig:
    base = default_run_config()

    def section(name: str, template):
        overrides = {
            key.split(".", 1)[1]: val
            for key, val in values.items()
            if key.startswith(name + ".")
        }
        try:
            return replace(template, **overrides)
        except ValueError as exc:
            raise ConfigError(name, str(exc)) from None

    cfg = RunConfig(
        source=section("source", base.source),
        bench=section("bench", base.bench),
        sim=section("sim", base.sim),
        sweep=section("sweep", base.sweep),
    )
    cfg.validate()
    return cfg


def _load_config(args) -> RunConfig:
    cfg = parse_config_file(args.config) if args.config else default_run_config()
    if getattr(args, "seed", None) is not None:
        try:
            cfg = replace(cfg, sim=replace(cfg.sim, seed=args.seed))
        except ValueError as exc:
            raise ConfigError("sim.seed", str(exc)) from None
        cfg.validate()
    return cfg


# --- output helpers ----------------------------------------------------------


def _write_csv(path, columns: list[str], rows: list[list[str]]) -> None:
    lines = ["# columns: " + ",".join(columns)]
    lines.extend(",".join(cells) for cells in rows)
    lines.append("")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines))


SWEEP_COLUMNS = [
    "phi34_rad", "tau_s",
    "g2_cross", "g2_cross_err", "g2_self3", "g2_self3_err",
    "g2_self4", "g2_self4_err", "i3_mean", "i4_mean",
    "oracle_g2_cross", "oracle_g2_self",
]


def sweep_grids(cfg: RunConfig) -> tuple[np.ndarray, np.ndarray]:
    phi34s = np.linspace(cfg.sweep.phi34_start, cfg.sweep.phi34_end, cfg.sweep.phi34_steps)
    taus = np.linspace(0.0, cfg.sweep.tau_max, cfg.sweep.tau_steps)
    # Snap delays onto the sample grid so estimators accept them.
    taus = np.round(taus / cfg.sim.dt) * cfg.sim.dt
    return phi34s, taus


def _sweep_point_job(job: tuple[RunConfig, int, float, tuple[float, ...]]) -> PointEstimates:
    cfg, point, phi34, taus = job
    bench_cfg = replace(cfg.bench, phi4=cfg.bench.phi3 + phi34)
    return estimate_point(
        cfg.source, bench_cfg, cfg.sim.duration, cfg.sim.dt, cfg.sim.seed,
        taus, repeats=cfg.sim.repeats, point=point,
    )


def run_sweep(cfg: RunConfig, workers: int = 1) -> list[PointEstimates]:
    """All sweep points, in grid order regardless of worker scheduling."""
    phi34s, taus = sweep_grids(cfg)
    jobs = [
        (cfg, i, float(phi34), tuple(float(t) for t in taus))
        for i, phi34 in enumerate(phi34s)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sweep_point_job, jobs))
    return [_sweep_point_job(job) for job in jobs]


def sweep_rows(cfg: RunConfig, points: list[PointEstimates]) -> list[list[str]]:
    rows = []
    for pt in points:
        omega = solid_angle_of_setup(cfg.bench.phi3, cfg.bench.phi3 + pt.phi34)
        oracle_cross = predict_g2_cross(cfg.bench.phi_d, omega)
        oracle_self = predict_g2_self(cfg.bench.phi_d)
        for it, tau in enumerate(pt.taus):
            rows.append([
                _fmt(pt.phi34), _fmt(tau),
                _fmt(pt.g2_cross[it].value), _fmt(pt.g2_cross[it].std_error),
                _fmt(pt.g2_self3[it].value), _fmt(pt.g2_self3[it].std_error),
                _fmt(pt.g2_self4[it].value), _fmt(pt.g2_self4[it].std_error),
                _fmt(pt.i3_mean), _fmt(pt.i4_mean),
                _fmt(oracle_cross), _fmt(oracle_self),
            ])
    return rows


# --- subcommands --------------------------------------------------------------


def cmd_simulate(cfg: RunConfig, out_path) -> None:
    """Write the detector traces of a single (phi34, phi_d) point."""
    traces = simulate_detectors(
        cfg.source, cfg.bench, cfg.sim.duration, cfg.sim.dt, cfg.sim.seed
    )
    save_detector_traces(traces, out_path)


def cmd_sweep(cfg: RunConfig, out_path, workers: int = 1) -> None:
    points = run_sweep(cfg, workers)
    _write_csv(out_path, SWEEP_COLUMNS, sweep_rows(cfg, points))


def cmd_analyze(trace_path, taus, kinds: list[str], out_path) -> None:
    """Run the correlation estimators offline on a recorded trace file."""
    traces = load_detector_traces(trace_path)
    columns = ["tau_s"]
    for kind in kinds:
        columns += [f"g2_{kind}", f"g2_{kind}_err"]
    columns += ["i3_mean", "i4_mean"]
    scans = {kind: g2_delay_scan(traces, kind, taus) for kind in kinds}
    i3_mean = float(np.mean(traces.i3))
    i4_mean = float(np.mean(traces.i4))
    rows = []
    for it, tau in enumerate(taus):
        cells = [_fmt(tau)]
        for kind in kinds:
            r = scans[kind][it]
            cells += [_fmt(r.value), _fmt(r.std_error)]
        cells += [_fmt(i3_mean), _fmt(i4_mean)]
        rows.append(cells)
    _write_csv(out_path, columns, rows)


def predict_report(phi3: float, phi4: float, phi_d: float) -> str:
    omega = solid_angle_of_setup(phi3, phi4)
    terms = term_audit(phi3, phi4, phi_d)
    n_zero = sum(1 for t in terms if t.value == 0)
    lines = [
        f"phi3    = {phi3:.9g} rad",
        f"phi4    = {phi4:.9g} rad",
        f"phi_d   = {phi_d:.9g} rad",
        f"omega   = {omega:.9g} sr   (solid angle of the R-4-L-3 polariser loop)",
        f"phi_g   = {omega / 2.0:.9g} rad  (geometric phase, omega/2)",
        f"g2_cross(tau=0) = {predict_g2_cross(phi_d, omega):.9g}",
        f"g2_self(tau=0)  = {predict_g2_self(phi_d):.9g}",
        "mean intensity  = 0.25 * (<I1> + <I2>) at each detector",
        "",
        "term audit (16 terms; * marks survivors):",
    ]
    for t in terms:
        star = "*" if t.value != 0 else " "
        lines.append(
            f"  {star} {t.label}  {t.kind:<9}  sign={t.sign:+d}"
            f"  magnitude={t.magnitude:.9g}  phase={t.phase:+.9g}"
        )
    lines.append(f"{n_zero} of 16 terms vanish on time averaging")
    lines.append(f"survivor sum = {audit_survivor_sum(terms):.12g}")
    return "\n".join(lines)


def cmd_predict(phi3: float, phi4: float, phi_d: float) -> None:
    print(predict_report(phi3, phi4, phi_d))


# --- argument parsing ----------------------------------------------------------


def _angle_arg(text: str) -> float:
    try:
        return parse_angle(text)
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hbt",
        description="Phase-noise intensity-interferometry bench simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="write detector traces for one setting")
    p_sweep = sub.add_parser("sweep", help="scan phi34 x tau and write estimates")
    p_an = sub.add_parser("analyze", help="correlate a recorded trace file")
    p_pre = sub.add_parser("predict", help="closed-form predictions and term audit")

    for p in (p_sim, p_sweep):
        p.add_argument("--config", help="flat key-value config file")
        p.add_argument("--seed", type=int, help="override sim.seed")
        p.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument("--workers", type=int, default=1, help="parallel sweep points")

    p_an.add_argument("trace", help="detector-trace CSV (as written by simulate)")
    p_an.add_argument("--out", required=True, help="output CSV path")
    p_an.add_argument("--taus", help="comma-separated delays in seconds")
    p_an.add_argument("--tau-max", type=float, help="delay grid end (seconds)")
    p_an.add_argument("--tau-steps", type=int, default=11, help="delay grid size")
    p_an.add_argument("--cross", action="store_true", help="cross correlation only")
    p_an.add_argument("--self3", action="store_true", help="detector-3 self correlation")
    p_an.add_argument("--self4", action="store_true", help="detector-4 self correlation")

    p_pre.add_argument("--phi3", type=_angle_arg, default=0.0)
    p_pre.add_argument("--phi4", type=_angle_arg, default=0.5 * math.pi)
    p_pre.add_argument("--phi-d", type=_angle_arg, default=0.0)
    return parser


def _analyze_taus(args) -> list[float]:
    if args.taus is not None:
        try:
            return [float(x) for x in args.taus.split(",") if x.strip()]
        except ValueError:
            raise ConfigError("--taus", f"unparseable delay list {args.taus!r}") from None
    if args.tau_max is not None:
        if args.tau_steps < 1:
            raise ConfigError("--tau-steps", "must be >= 1")
        return [float(t) for t in np.linspace(0.0, args.tau_max, args.tau_steps)]
    return [0.0]


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "simulate":
            cmd_simulate(_load_config(args), args.out)
        elif args.command == "sweep":
            if args.workers < 1:
                raise ConfigError("--workers", "must be >= 1")
            cmd_sweep(_load_config(args), args.out, workers=args.workers)
        elif args.command == "analyze":
            kinds = [
                kind for kind, on in
                (("cross", args.cross), ("self3", args.self3), ("self4", args.self4))
                if on
            ] or ["cross", "self3", "self4"]
            cmd_analyze(args.trace, _analyze_taus(args), kinds, args.out)
        elif args.command == "predict":
            cmd_predict(args.phi3, args.phi4, args.phi_d)
    except ValueError as exc:
        print(f"hbt: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"hbt: i/o error: {exc}", file=sys.stderr)
        return 3
    return 0


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
