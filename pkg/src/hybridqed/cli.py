"""
Command-line front end.

Every subcommand reads an optional scenario document (``--config``), applies
``--set section.key=value`` overrides, and writes plot-ready files next to
``--out PREFIX``. Data files carry the scenario digest in '#' comments and
nothing time-dependent, so reruns are byte-identical.

Exit status: 0 success, 1 configuration/validation error, 2 numerical error.
"""

import argparse
import json
import logging
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .config_io import (RunReport, config_digest, derive_all, format_csv, load_config,
                        parse_quantity, write_text)
from .dynamics import TwistingModel, optimal_squeezing, run_noon
from .errors import ConfigError, DomainError, NumericalError, SingularityError
from .hybrid import field_profile
from .spectra import LinearSystemModel, dynamical_matrix_eigenvalues, sweep_spectrum
from .sweeps import SweepSpec, optimize_detuning, regime_curves, sweep_detuning, sweep_rm_d

log = logging.getLogger("hybridqed")

TWO_PI = 2 * np.pi


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _length(text, field):
    return parse_quantity(text, "length", field=field)


def _range(text, kind, field):
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError("expected MIN:MAX:STEPS", field=field)
    lo, hi, steps = parts
    if kind is None:
        lo, hi = float(lo), float(hi)
    else:
        lo, hi = parse_quantity(lo, kind, field), parse_quantity(hi, kind, field)
    try:
        n = int(steps)
    except ValueError:
        raise ConfigError(f"steps must be an integer, got {steps!r}", field=field) from None
    return (lo, hi, n)


def _hz(w):
    return w / TWO_PI


class Context:
    def __init__(self, args):
        self.args = args
        text = ""
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        self.config = load_config(text, args.set or ())
        self.digest = config_digest(self.config)
        prefix = args.out or args.command
        outdir = os.path.dirname(os.path.abspath(prefix))
        os.makedirs(outdir, exist_ok=True)
        self.prefix = prefix

    def comments(self, *extra):
        return (f"hybridqed {__version__}", f"command: {self.args.command}",
                f"input_digest: {self.digest}", *extra)

    def write_csv(self, columns, rows, *extra, suffix=".csv"):
        path = self.prefix + suffix
        write_text(path, format_csv(columns, rows, self.comments(*extra)))
        log.info("wrote %s", path)
        return path

    def write_json(self, payload, suffix=".json"):
        path = self.prefix + suffix
        payload = {"input_digest": self.digest, **payload}
        write_text(path, json.dumps(payload, indent=2, sort_keys=False) + "\n")
        log.info("wrote %s", path)
        return path


def cmd_params(ctx):
    stamp = datetime.now(timezone.utc).isoformat() if ctx.args.stamp else None
    report = RunReport(ctx.config, derive_all(ctx.config), timestamp=stamp)
    path = ctx.prefix + ".json"
    write_text(path, report.to_json())
    log.info("wrote %s", path)


def cmd_field_profile(ctx):
    p = derive_all(ctx.config)
    r_m = ctx.config.geometry.r_m
    r_max = _length(ctx.args.r_max, "--r-max") if ctx.args.r_max else 5 * r_m
    r = np.linspace(0.0, r_max, ctx.args.points)
    on_axis = np.abs(field_profile(p.beta, r_m, r, 0.0))
    equator = np.abs(field_profile(p.beta, r_m, r, np.pi / 2))
    ctx.write_csv(["r_nm", "abs_factor_theta_0", "abs_factor_theta_pi_2"],
                  zip(r * 1e9, on_axis, equator), f"r_m_nm: {r_m * 1e9:.9g}")


def cmd_sweep_rm_d(ctx):
    spec = SweepSpec(r_m_range=_range(ctx.args.rm, "length", "--rm"),
                     d_range=_range(ctx.args.d, "length", "--d"),
                     fixed=ctx.config)
    res = sweep_rm_d(spec, workers=ctx.args.workers)
    d_cols = [f"{x * 1e9:.8e}" for x in res.axes["d"]]
    rows = ([rm * 1e9, *vals] for rm, vals in zip(res.axes["r_m"], res.values))
    ctx.write_csv(["r_m_nm\\d_nm", *d_cols], rows,
                  "values: cooperativity enhancement C_cm/C_c; rows r_m, columns d")
    ctx.write_json({"argmax": {"r_m_nm": res.argmax["r_m"] * 1e9,
                               "d_nm": res.argmax["d"] * 1e9,
                               "enhancement": res.argmax["value"]}})


def cmd_sweep_detuning(ctx):
    radii = [_length(x, "--rm") for x in (ctx.args.rm or ["5nm", "12nm", "20nm", "30nm"])]
    spec = SweepSpec(delta_sp_range=_range(ctx.args.range, None, "--range"), fixed=ctx.config)
    results = sweep_detuning(spec, radii, workers=ctx.args.workers)
    x = results[0].axes["delta_sp_over_gamma_m"]
    cols = ["delta_sp_over_gamma_m"] + [f"enhancement_rm_{rm * 1e9:.6g}nm" for rm in radii]
    rows = zip(x, *(r.values for r in results))
    ctx.write_csv(cols, rows)
    ctx.write_json({"argmax": [
        {"r_m_nm": rm * 1e9, "delta_sp_over_gamma_m": r.argmax["delta_sp_over_gamma_m"],
         "enhancement": r.argmax["value"]} for rm, r in zip(radii, results)]})


def cmd_optimize(ctx):
    cfg = ctx.config
    if ctx.args.rm:
        cfg = cfg.with_geometry(r_m=_length(ctx.args.rm, "--rm"))
    dsp, enh = optimize_detuning(cfg)
    ctx.write_json({
        "r_m_nm": cfg.geometry.r_m * 1e9,
        "delta_sp_over_gamma_m": dsp / cfg.metal.gamma_m,
        "delta_sp_hz": _hz(dsp),
        "lambda_c_nm": TWO_PI * 299792458.0 / (cfg.omega_sp + dsp) * 1e9,
        "enhancement": enh,
    })


def cmd_spectrum(ctx):
    p = derive_all(ctx.config)
    model = LinearSystemModel.auto(p, include_mnp=not ctx.args.no_mnp,
                                   include_dipole=not ctx.args.no_dipole,
                                   points=ctx.args.points)
    tr = sweep_spectrum(model)
    ctx.write_csv(["delta_hz", "transmission"], zip(_hz(tr.delta), tr.transmission),
                  f"include_mnp: {model.include_mnp}", f"include_dipole: {model.include_dipole}")
    ev = dynamical_matrix_eigenvalues(model)
    ctx.write_json({
        "include_mnp": model.include_mnp,
        "include_dipole": model.include_dipole,
        "dip_positions_hz": [_hz(x) for x in tr.dip_positions],
        "dip_depths": tr.dip_depths,
        "dip_widths_hz": [None if np.isnan(w) else _hz(w) for w in tr.dip_widths],
        "coarse_grid": tr.coarse_grid,
        "eigen_positions_hz": [_hz(e.real) for e in ev],
        "eigen_fwhm_hz": [_hz(-2 * e.imag) for e in ev],
    })


def cmd_regimes(ctx):
    r_m = _length(ctx.args.rm, "--rm") if ctx.args.rm else None
    grid = np.linspace(*_range(ctx.args.range, None, "--range"))
    cur = regime_curves(ctx.config, r_m, grid)
    ctx.write_csv(["delta_sp_over_gamma_m", "C_cm", "C_I", "C_II"],
                  zip(cur["delta_sp_over_gamma_m"], cur["C_cm"], cur["C_I"], cur["C_II"]))


def _twisting(ctx, n):
    p = derive_all(ctx.config)
    if ctx.args.delta_ec:
        d_ec = parse_quantity(ctx.args.delta_ec, "rate", "--delta-ec")
    elif p.delta_ec != 0:
        d_ec = p.delta_ec
    else:
        d_ec = 10 * p.G_cm
        log.info("delta_ec = 0 in the scenario; using 10 G_cm for the dispersive regime")
    return TwistingModel.from_params(p, n, d_ec)


def _dynamics_payload(model, fidelity=None, phase=None):
    xi2, t_opt = optimal_squeezing(model.n_spins, model.chi) if model.n_spins > 1 else (1.0, 0.0)
    return {
        "N": model.n_spins,
        "chi_hz": _hz(model.chi),
        "delta_ec_hz": _hz(model.delta_ec),
        "dispersive": model.dispersive,
        "fidelity": fidelity,
        "optimal_phase_rad": phase,
        "xi2_min": xi2,
        "t_opt": t_opt,
    }


def cmd_noon(ctx):
    model = _twisting(ctx, ctx.args.N)
    res = run_noon(model.n_spins, model.chi)
    ctx.write_json(_dynamics_payload(model, res.fidelity, res.phase))


def cmd_squeeze(ctx):
    model = _twisting(ctx, ctx.args.N)
    ctx.write_json(_dynamics_payload(model))


COMMANDS = {
    "params": cmd_params,
    "field-profile": cmd_field_profile,
    "sweep-rm-d": cmd_sweep_rm_d,
    "sweep-detuning": cmd_sweep_detuning,
    "optimize": cmd_optimize,
    "spectrum": cmd_spectrum,
    "regimes": cmd_regimes,
    "noon": cmd_noon,
    "squeeze": cmd_squeeze,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="scenario YAML document")
    common.add_argument("--set", action="append", metavar="KEY=VALUE",
                        help="override, e.g. geometry.r_m=20nm (repeatable)")
    common.add_argument("--out", help="output path prefix (default: the subcommand name)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="hybridqed", description=__doc__.splitlines()[1])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("params", parents=[common], help="derived rate set (RunReport JSON)")
    p.add_argument("--stamp", action="store_true", help="record a timestamp in the report")

    p = sub.add_parser("field-profile", parents=[common], help="near-field factor vs r")
    p.add_argument("--r-max", help="largest distance from the sphere centre, e.g. 60nm")
    p.add_argument("--points", type=int, default=241)

    p = sub.add_parser("sweep-rm-d", parents=[common], help="enhancement map over r_m and d")
    p.add_argument("--rm", default="1nm:40nm:40")
    p.add_argument("--d", default="1nm:20nm:39")
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("sweep-detuning", parents=[common], help="enhancement vs delta_sp")
    p.add_argument("--rm", action="append", help="sphere radius (repeatable)")
    p.add_argument("--range", default="-6:4:201", help="MIN:MAX:STEPS in units of gamma_m")
    p.add_argument("--workers", type=int, default=None)

    p = sub.add_parser("optimize", parents=[common], help="best cavity-plasmon detuning")
    p.add_argument("--rm")

    p = sub.add_parser("spectrum", parents=[common], help="taper transmission spectrum")
    p.add_argument("--no-mnp", action="store_true")
    p.add_argument("--no-dipole", action="store_true")
    p.add_argument("--points", type=int, default=2001)

    p = sub.add_parser("regimes", parents=[common], help="C_cm, C_I, C_II vs detuning")
    p.add_argument("--rm", default="20nm")
    p.add_argument("--range", default="-6:4:201")

    for name in ("noon", "squeeze"):
        p = sub.add_parser(name, parents=[common], help=f"{name} protocol in the dispersive regime")
        p.add_argument("--N", type=int, default=4 if name == "noon" else 10)
        p.add_argument("--delta-ec", help="emitter-cavity detuning, e.g. 90GHz")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s", stream=sys.stderr)
    try:
        ctx = Context(args)
        COMMANDS[args.command](ctx)
    except (ConfigError, OSError) as exc:
        print(f"hybridqed: error: {exc}", file=sys.stderr)
        return 1
    except (NumericalError, SingularityError, DomainError, np.linalg.LinAlgError,
            FloatingPointError) as exc:
        print(f"hybridqed: numerical error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
