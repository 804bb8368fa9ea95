"""Command-line front end.

Exit status: 0 on success, 1 for I/O or configuration errors, 2 for
numerical failures (singular points, ambiguous steady states, fits that do
not converge).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import calibration, config, io, kerr, scan
from .model import RB_D1_DIPOLE, Role
from .oracle import AmbiguousSteadyStateError, oracle_chi_grid
from .susceptibility import SingularPointError, chi_grid


class NumericalError(RuntimeError):
    pass


def _kv(out, key: str, value) -> None:
    if isinstance(value, float):
        value = repr(value)
    print(f"{key}={value}", file=out)


def _table_for(doc: dict):
    scenario = config.scenario_from(doc)
    opts = config.output_from(doc)
    if doc.get("kind") == "fig4":
        spec = config.scan_from(doc) if "scan" in doc else scan.fig4_spec()
        table = scan.fig4_scan(scenario, spec)
    else:
        spec = config.scan_from(doc)
        table = scan.sweep(spec, scenario, baseline=opts.baseline, xpm=opts.xpm,
                           group_index=opts.group_index)
    if opts.columns:
        try:
            table = table.select(opts.columns)
        except KeyError as exc:
            raise config.ConfigError("output.columns", str(exc.args[0])) from None
    return table, opts


def _write(doc: dict, out_path: str, fmt: str | None) -> int:
    table, opts = _table_for(doc)
    fmt = fmt or opts.format
    try:
        io.emit_table(table, out_path, fmt, comments=config.provenance_lines(doc))
    except OSError as exc:
        raise config.ConfigError("out", f"cannot write {out_path}: {exc.strerror}") from None
    print(f"wrote {len(table)} rows to {out_path}")
    return 0


def cmd_sweep(args) -> int:
    return _write(config.load(args.config), args.out, args.format)


def cmd_fig(args) -> int:
    return _write(config.load_preset(args.preset), args.out, args.format)


def cmd_xpm(args) -> int:
    doc = config.load(args.config)
    params = config.params_from(doc)
    block = doc.get("xpm", {})
    out = sys.stdout
    if "n2" in block:
        if "intensity" not in block:
            raise config.ConfigError("xpm.intensity", "required when xpm.n2 is given")
        phase = kerr.xpm_phase_shift(block["n2"], block["intensity"], params.wavelength, params.cell_length)
        _kv(out, "n2_cm2_per_w", float(block["n2"]))
        _kv(out, "intensity_w_per_cm2", float(block["intensity"]))
        _kv(out, "phase_rad", phase)
        _kv(out, "phase_deg", kerr.degrees(phase))
        return 0
    scenario = config.scenario_from(doc)
    drives = scenario.effective_drives
    target = block.get("target", "trigger")
    targets = (Role.PROBE, Role.TRIGGER) if target == "both" else (Role(target),)
    total = 0.0
    for role in targets:
        res = kerr.xpm_result(role, scenario.params, drives, block.get("intensity"),
                              scenario.population_source, scenario.oracle_model)
        s = "p" if role is Role.PROBE else "t"
        _kv(out, f"n2_{s}_cm2_per_w", res.n2)
        _kv(out, f"phase_{s}_rad", res.phase_shift)
        _kv(out, f"phase_{s}_deg", kerr.degrees(res.phase_shift))
        _kv(out, f"transmission_{s}", res.transmission_at_point)
        total += res.phase_shift
    if len(targets) == 2:
        _kv(out, "conditional_phase_rad", total)
        _kv(out, "conditional_phase_deg", kerr.degrees(total))
    return 0


def cmd_oracle_check(args) -> int:
    doc = config.load(args.config)
    scenario = config.scenario_from(doc)
    spec = config.scan_from(doc)
    drives = scenario.effective_drives
    dp, dt, dc = spec.detunings(drives.detunings, spec.axis_values())
    chi_p, chi_t, pops = oracle_chi_grid(scenario.params, drives, dp, dt, dc, scenario.oracle_model)
    grid = chi_grid(scenario.params, drives, dp, dt, dc, pops)
    err_p = float(np.max(np.abs(grid.chi_p - chi_p) / np.abs(chi_p)))
    err_t = float(np.max(np.abs(grid.chi_t - chi_t) / np.abs(chi_t)))
    _kv(sys.stdout, "points", len(dp))
    _kv(sys.stdout, "max_relative_error_probe", err_p)
    _kv(sys.stdout, "max_relative_error_trigger", err_t)
    _kv(sys.stdout, "max_relative_error", max(err_p, err_t))
    return 0


def cmd_fit(args) -> int:
    doc = config.load(args.config)
    scenario = config.scenario_from(doc)
    spec = config.scan_from(doc)
    opts = config.fit_from(doc)
    try:
        data = io.read_measurements(args.data)
    except OSError as exc:
        raise config.ConfigError("data", f"cannot read {args.data}: {exc.strerror}") from None
    except ValueError as exc:
        raise config.ConfigError("data", str(exc)) from None
    result = scan.fit_parameters(data, scenario, scan.model_column(spec, opts.column), opts.free,
                                 opts.bounds, max_iter=opts.max_iter)
    for name, value in result.values.items():
        _kv(sys.stdout, name, float(value))
    _kv(sys.stdout, "residual", result.residual)
    _kv(sys.stdout, "iterations", result.iterations)
    _kv(sys.stdout, "converged", str(result.converged).lower())
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            json.dump({"values": result.values, "residual": result.residual,
                       "iterations": result.iterations, "converged": result.converged},
                      fh, indent=1, sort_keys=True)
            fh.write("\n")
    if not result.converged:
        raise NumericalError(f"fit did not converge: {result.message}")
    return 0


def cmd_calibrate(args) -> int:
    try:
        pairs = io.read_pairs(args.pairs)
    except OSError as exc:
        raise config.ConfigError("pairs", f"cannot read {args.pairs}: {exc.strerror}") from None
    except (ValueError, IndexError) as exc:
        raise config.ConfigError("pairs", str(exc)) from None
    dipole = calibration.calibrate_dipole(pairs)
    _kv(sys.stdout, "dipole_c_m", dipole)
    _kv(sys.stdout, "ratio_to_default", dipole / RB_D1_DIPOLE)
    for beam, quoted in pairs:
        model = calibration.rabi_from_power(beam, dipole)
        print(f"power_w={beam.power!r} diameter_cm={beam.diameter_1e!r} "
              f"quoted_mhz={quoted!r} model_mhz={model!r} "
              f"intensity_w_per_cm2={calibration.peak_intensity(beam)!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tripod-xpm",
        description="Steady-state double-EIT and cross-phase modulation in a tripod medium.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="run a detuning sweep from a scenario file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fig", help="reconstruct a figure preset")
    p.add_argument("--preset", required=True, choices=config.PRESETS)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=("csv", "json"))
    p.set_defaults(func=cmd_fig)

    p = sub.add_parser("xpm", help="print cross-Kerr coefficient, phase and transmission")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_xpm)

    p = sub.add_parser("oracle-check", help="compare the closed form with the density-matrix solver")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("fit", help="fit model parameters to measured data")
    p.add_argument("--config", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("calibrate", help="fit the dipole scale to power/Rabi pairs")
    p.add_argument("--pairs", required=True)
    p.set_defaults(func=cmd_calibrate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except config.ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SingularPointError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, AmbiguousSteadyStateError, np.linalg.LinAlgError, scan.NoFeatureError) as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

