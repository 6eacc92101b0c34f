"""Command-line front end.

Subcommands write CSV files and print summary numbers:

    simulate   trajectory of the full or reduced model
    frf        chirp simulation + H1 estimate + smoothing
    linearize  derived constants, flow coefficients and operating-point FRF
    curves     static load flow vs load pressure
    rootlocus  closed-loop poles of the position loop vs gain

Exit codes: 0 success, 1 usage or configuration error, 2 numeric blow-up.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import frfest, linear
from .params import ParameterError, PlantParameters, load_config
from .sim import SimulationError, integrate, parse_input_spec


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.replace(";", ",").split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _g(v: float) -> str:
    return f"{v:.6g}"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hydrocyl", description=__doc__.splitlines()[0])
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key=value parameter file (unset keys keep defaults)")
    common.add_argument("--out", help="output CSV path")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simulate", parents=[common], help="simulate a trajectory")
    s.add_argument("--model", choices=("full", "reduced"), default="reduced")
    s.add_argument("--input", default="const:0",
                   help="const:A | step:A[:T] | sine:A:F | chirp:A:F0:F1[:T]")
    s.add_argument("--tend", type=float, default=1.0)
    s.add_argument("--dt", type=float, default=1e-4)
    s.add_argument("--bypass-deadzone", action="store_true")
    s.add_argument("--method", choices=("euler", "rk4"), default="euler")
    s.add_argument("--load", type=float, default=0.0, help="constant external force, N")

    f = sub.add_parser("frf", parents=[common], help="chirp-based H1 frequency response")
    f.add_argument("--model", choices=("full", "reduced"), default="reduced")
    f.add_argument("--amp", type=float, default=None, help="chirp amplitude, m (default alpha)")
    f.add_argument("--f0", type=float, default=600.0)
    f.add_argument("--f1", type=float, default=1.0)
    f.add_argument("--tend", type=float, default=120.0)
    f.add_argument("--dt", type=float, default=1e-4)
    f.add_argument("--segment", type=int, default=frfest.DEFAULT_SEGMENT)
    f.add_argument("--smooth", type=int, default=2, help="smoothing half width, bins")
    f.add_argument("--keep-deadzone", action="store_true",
                   help="keep the dead-zone (bypassed by default)")
    f.add_argument("--trajectory", help="also write the simulated trajectory CSV here")

    lz = sub.add_parser("linearize", parents=[common], help="operating-point linearization")
    lz.add_argument("--zhat", type=float, default=None, help="orifice state, m (default alpha)")
    lz.add_argument("--plhat", type=float, default=0.0, help="load pressure, Pa")
    lz.add_argument("--mode", choices=("paper", "consistent"), default="paper")
    lz.add_argument("--fmin", type=float, default=1.0)
    lz.add_argument("--fmax", type=float, default=1000.0)
    lz.add_argument("--npoints", type=int, default=400)

    c = sub.add_parser("curves", parents=[common], help="static flow-pressure curves")
    c.add_argument("--zlist", type=_floats, default=None,
                   help="comma-separated orifice states, m (default 0, 0.2alpha, ..., alpha)")
    c.add_argument("--npoints", type=int, default=101)

    r = sub.add_parser("rootlocus", parents=[common], help="root locus of k G(s)/s")
    r.add_argument("--kmax", type=float, default=None, help="largest gain (default 10 k_crit)")
    r.add_argument("--npoints", type=int, default=200)
    return parser


def _save(path, header, columns):
    np.savetxt(path, np.column_stack(columns), delimiter=",", fmt="%.9g",
               header=",".join(header), comments="")


def _cmd_simulate(args, p):
    sig = parse_input_spec(args.input, duration=args.tend)
    traj = integrate(args.model, p, sig, args.tend, args.dt, load=args.load,
                     bypass_deadzone=args.bypass_deadzone, method=args.method)
    if args.out:
        traj.to_csv(args.out)
    final = ", ".join(f"{k}={_g(traj[k][-1])}" for k in traj.data if k != "u")
    print(f"{args.model} model, {len(traj)} samples, final: {final}")


def _cmd_frf(args, p):
    amp = p.alpha if args.amp is None else args.amp
    sig = parse_input_spec(f"chirp:{amp}:{args.f0}:{args.f1}:{args.tend}")
    traj = integrate(args.model, p, sig, args.tend, args.dt, bypass_deadzone=not args.keep_deadzone)
    if args.trajectory:
        traj.to_csv(args.trajectory)
    frf = frfest.smooth(frfest.h1_estimate(traj["u"], traj["x_dot"], args.dt, args.segment),
                        args.smooth)
    if args.out:
        frf.to_csv(args.out)
    print(f"peak frequency = {_g(frfest.peak_frequency(frf, 5.0, args.f0))} Hz")


def _cmd_linearize(args, p):
    d = p.derived
    z_hat = p.alpha if args.zhat is None else args.zhat
    op = linear.OperatingPoint(z_hat, args.plhat)
    coeffs = linear.flow_coefficients(op, p, args.mode)
    tf = linear.closed_linear_tf(op, p, args.mode)
    for name, val in [("K", d.K), ("Abar", d.Abar), ("Vt", d.Vt), ("omega_c", d.omega_c),
                      ("zeta", d.zeta), ("Cq", coeffs.Cq), ("Cqp", coeffs.Cqp)]:
        print(f"{name} = {_g(val)}")
    if args.out:
        linear.frf_eval(tf, np.geomspace(args.fmin, args.fmax, args.npoints)).to_csv(args.out)


def _cmd_curves(args, p):
    z_values = args.zlist if args.zlist is not None else list(np.linspace(0.0, p.alpha, 6))
    PL = np.linspace(0.0, p.PS, args.npoints)
    table = linear.flow_pressure_curves(z_values, PL, p)
    if args.out:
        _save(args.out, ["PL"] + [f"z={z:.9g}" for z in z_values], [PL, *table])
    print(f"QL(z={_g(max(z_values))}, PL=0) = {_g(table[int(np.argmax(z_values)), 0])} m^3/s")


def _cmd_rootlocus(args, p):
    gains = linear.default_gain_grid(p, args.npoints, args.kmax)
    poles = linear.root_locus(p, gains)
    if args.out:
        cols = [gains]
        for i in range(3):
            cols += [poles[:, i].real, poles[:, i].imag]
        _save(args.out, ["k", "re1", "im1", "re2", "im2", "re3", "im3"], cols)
    print(f"k_crit = {_g(linear.critical_gain(p))}")


_COMMANDS = {
    "simulate": _cmd_simulate,
    "frf": _cmd_frf,
    "linearize": _cmd_linearize,
    "curves": _cmd_curves,
    "rootlocus": _cmd_rootlocus,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    try:
        p = load_config(args.config) if args.config else PlantParameters()
    except ParameterError as exc:
        print("invalid configuration:", file=sys.stderr)
        for v in exc.violations:
            print(f"  {v}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 1
    try:
        _COMMANDS[args.command](args, p)
    except SimulationError as exc:
        print(f"numeric blow-up: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
