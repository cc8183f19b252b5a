"""Command line front end.

    classical-eit presets [--preset NAME]
    classical-eit translate  (--preset NAME | --config PATH) [--scale S]
    classical-eit spectrum   (--preset NAME | --config PATH) [--observable OBS]
                             [--grid a:b:n] [--switch open|closed] [--output CSV] [--emit-plot GP]
    classical-eit features   (--preset NAME | --config PATH) [--grid a:b:n] [--switch ...]
    classical-eit timedomain (--preset NAME | --config PATH) [--omega W] [--t-end T]
                             [--steps-per-period N] [--output CSV] [--emit-plot GP]
    classical-eit verify     (--preset NAME | --config PATH) [--points N] [--grid a:b:n]

A JSON run report goes to stdout.  Errors go to stderr prefixed ``ERROR:``;
exit status is 0 on success, 1 for configuration errors, 2 for numerical
failures.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import PRESETS, Preset, dump_config, get_preset, parse_config, with_switch
from .csvio import emit_gnuplot, read_csv, write_csv
from .errors import EITError
from .model import CircuitParams, coupled_equations, translate
from .response import probe_amplitude
from .spectrum import FrequencyGrid, Observable, analyze, sweep
from .timedomain import (
    IntegrationConfig,
    demodulate,
    demodulated_response,
    integrate,
    steady_state_amplitude,
)

VERIFY_TOLERANCE = 1e-3
VERIFY_STEPS_PER_PERIOD = 1536


@dataclass
class RunReport:
    command: str
    preset: Optional[str] = None
    config: Optional[str] = None
    outputs: list = field(default_factory=list)
    features: Optional[dict] = None
    oracle_comparison: Optional[float] = None
    advisories: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(_jsonable(dataclasses.asdict(self)), indent=2, sort_keys=True)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"ERROR: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="classical-eit",
                     description="Classical analog of EIT in coupled oscillators and RLC meshes.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def source(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--preset", help="built-in preset name (see 'presets')")
        g.add_argument("--config", help="path to a key = value configuration file")

    p = sub.add_parser("presets", help="list built-in presets or print one as a config")
    p.add_argument("--preset", help="print this preset as a configuration document")

    p = sub.add_parser("translate", help="map parameters to the other picture")
    source(p)
    p.add_argument("--scale", type=float, default=1.0, help="inductance per unit mass")

    p = sub.add_parser("spectrum", help="sweep an observable and write CSV")
    source(p)
    p.add_argument("--observable",
                   choices=["absorption", "dispersion", "phase", "power-open", "power-closed"])
    p.add_argument("--grid")
    p.add_argument("--switch", choices=["open", "closed"])
    p.add_argument("--output")
    p.add_argument("--emit-plot")

    p = sub.add_parser("features", help="sweep and report dip, doublet, dispersion, phase jumps")
    source(p)
    p.add_argument("--grid")
    p.add_argument("--switch", choices=["open", "closed"])

    p = sub.add_parser("timedomain", help="integrate from rest, demodulate, write trajectory CSV")
    source(p)
    p.add_argument("--omega", type=float, help="drive angular frequency (default: natural)")
    p.add_argument("--t-end", type=float, help="integrate to this time and keep every step")
    p.add_argument("--steps-per-period", type=int, default=256)
    p.add_argument("--switch", choices=["open", "closed"])
    p.add_argument("--output")
    p.add_argument("--emit-plot")

    p = sub.add_parser("verify", help="compare the RK4 oracle against the closed form")
    source(p)
    p.add_argument("--points", type=int, default=21)
    p.add_argument("--grid")
    p.add_argument("--steps-per-period", type=int, default=VERIFY_STEPS_PER_PERIOD)
    p.add_argument("--tolerance", type=float, default=VERIFY_TOLERANCE)
    return parser


def _load(args) -> Preset:
    if args.preset:
        preset = get_preset(args.preset)
    else:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise EITError(f"cannot read config {args.config!r}: {exc.strerror}") from None
        preset = parse_config(text, name=args.config)
    if getattr(args, "switch", None):
        preset = with_switch(preset, args.switch == "closed")
    if getattr(args, "grid", None):
        preset = dataclasses.replace(preset, grid=FrequencyGrid.parse(args.grid))
    return preset


def _default_observable(preset: Preset) -> Observable:
    p = preset.params
    if isinstance(p, CircuitParams):
        return Observable.CIRCUIT_POWER_CLOSED if p.switch_closed else Observable.CIRCUIT_POWER_OPEN
    return Observable.ABSORPTION


def _features_dict(f) -> dict:
    d = dataclasses.asdict(f)
    d["maxima"] = [{"omega": w, "value": v} for w, v in f.maxima]
    d["minima"] = [{"omega": w, "value": v} for w, v in f.minima]
    return d


def cmd_presets(args, report):
    if args.preset:
        sys.stdout.write(dump_config(get_preset(args.preset)))
        return None
    for name in sorted(PRESETS):
        pr = PRESETS[name]
        first = pr.notes.splitlines()[0] if pr.notes else ""
        print(f"{name:16s} {pr.picture:10s} {first}")
    return None


def cmd_translate(args, report):
    preset = _load(args)
    other = translate(preset.params, args.scale)
    out = Preset(f"{preset.name}-translated", other.picture, other, preset.grid,
                 notes=f"translated from {preset.picture} picture, scale = {args.scale!r}")
    report.details["scale"] = args.scale
    report.details["translated"] = dump_config(out)
    return report


def cmd_spectrum(args, report):
    preset = _load(args)
    obs = Observable.parse(args.observable) if args.observable else _default_observable(preset)
    s = sweep(preset.params, preset.grid, obs)
    output = args.output or f"{preset.name.replace('/', '_')}_{obs.value}.csv"
    holes = write_csv(s, output)
    read_csv(output)
    report.outputs.append(output)
    report.advisories.extend(s.advisories)
    if holes:
        report.advisories.append(f"{holes} hole row(s) written with empty value fields")
    if args.emit_plot:
        emit_gnuplot(output, args.emit_plot, obs, preset.picture, title=preset.name)
        report.outputs.append(args.emit_plot)
    report.details["observable"] = obs.value
    return report


def cmd_features(args, report):
    preset = _load(args)
    feats = analyze(preset.params, preset.grid)
    report.features = _features_dict(feats)
    return report


def cmd_timedomain(args, report):
    preset = _load(args)
    params = preset.params
    omega = args.omega or math.sqrt(coupled_equations(params).omega_d_sq)
    spp = args.steps_per_period
    period = 2 * math.pi / omega
    if args.t_end is not None:
        cfg0 = IntegrationConfig.for_drive(params, omega, spp, transient_periods=0)
        cfg = dataclasses.replace(cfg0, t_end=args.t_end)
        traj = integrate(params, omega, cfg)
        whole = int(math.floor(traj.t[-1] / period + 1e-9))
        if whole >= 1:
            n = whole * spp + 1
            res = demodulate(traj.t[-n:], traj.driven[-n:], omega)
            report.details["demodulation_residual"] = res.residual
            report.details["demodulated"] = res.value
            report.advisories.append(
                "demodulated over the final whole periods without a settling check"
            )
    else:
        cfg = IntegrationConfig.for_drive(params, omega, spp)
        keep = spp * cfg.demod_periods
        traj = integrate(params, omega, cfg, record_from=cfg.t_end - keep * cfg.dt)
        res = steady_state_amplitude(traj, omega, cfg)
        report.details["demodulation_residual"] = res.residual
        report.details["demodulated"] = res.value
        report.details["transient_periods"] = cfg.transient_periods
    analytic = complex(probe_amplitude(params, omega))
    report.details["analytic"] = analytic
    if "demodulated" in report.details and analytic != 0:
        report.oracle_comparison = abs(report.details["demodulated"] - analytic) / abs(analytic)
    report.details["omega"] = omega
    report.details["dt"] = cfg.dt
    output = args.output or f"{preset.name.replace('/', '_')}_trajectory.csv"
    write_csv(traj, output)
    report.outputs.append(output)
    if args.emit_plot:
        emit_gnuplot(output, args.emit_plot, None, preset.picture, title=preset.name)
        report.outputs.append(args.emit_plot)
    return report


def cmd_verify(args, report):
    preset = _load(args)
    if args.points < 2:
        raise EITError("--points must be >= 2")
    omegas = np.linspace(preset.grid.start, preset.grid.stop, args.points)
    numeric = demodulated_response(preset.params, omegas, args.steps_per_period)
    analytic = probe_amplitude(preset.params, omegas)
    rel = np.abs(numeric - analytic) / np.abs(analytic)
    report.oracle_comparison = float(np.max(rel))
    report.details["points"] = [
        {"omega": float(w), "analytic": complex(a), "oracle": complex(n), "relative_error": float(r)}
        for w, a, n, r in zip(omegas, analytic, numeric, rel)
    ]
    report.details["tolerance"] = args.tolerance
    if not report.oracle_comparison <= args.tolerance:
        report.details["status"] = "FAILED"
        return report, 2
    report.details["status"] = "ok"
    return report


COMMANDS = {
    "presets": cmd_presets,
    "translate": cmd_translate,
    "spectrum": cmd_spectrum,
    "features": cmd_features,
    "timedomain": cmd_timedomain,
    "verify": cmd_verify,
}


def run(argv=None):
    """Execute one command; returns ``(report or None, exit_code)``."""
    args = build_parser().parse_args(argv)
    report = RunReport(command=args.command, preset=getattr(args, "preset", None),
                       config=getattr(args, "config", None))
    try:
        result = COMMANDS[args.command](args, report)
    except EITError as exc:
        print(f"ERROR: {type(exc).__name__}: {exc}", file=sys.stderr)
        return None, exc.exit_code
    except OSError as exc:
        print(f"ERROR: {type(exc).__name__}: {exc}", file=sys.stderr)
        return None, 1
    code = 0
    if isinstance(result, tuple):
        result, code = result
    if result is not None:
        print(result.to_json())
    if code:
        print(f"ERROR: oracle mismatch {result.oracle_comparison:.3g} exceeds tolerance",
              file=sys.stderr)
    return result, code


def main(argv=None) -> int:
    _, code = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
