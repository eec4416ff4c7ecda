"""Command-line front end.

Subcommands:

    duffing-freq      single-point squared frequency / period of the cubic
                      oscillator by method
    pendulum-period   single-point squared frequency / period of the pendulum
    sweep             evaluate methods over an amplitude or coupling grid,
                      CSV to stdout or file (optionally with a PNG figure)
    trajectory        integrated vs perturbative-series displacement samples
    variant-table     the two closed forms of the optimized cubic-oscillator
                      frequency compared against the exact one
    selfcheck         run the library's invariant suite

Exit codes: 0 success, 2 argument error, 3 domain error (invalid physical
parameters), 4 numerical failure (non-convergence, step-limit, estimation).
The environment variable LPLDE_JMAX overrides the default pendulum series
truncation (5).
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__, duffing, oracle, pendulum
from .errors import ConvergenceError, DomainError, EstimationError, StepLimitError
from .sweep import METHODS, ResultTable, SweepSpec, format_csv, run_sweep

TWO_PI = 2.0 * math.pi

_POINT_METHODS = ("lp1", "lp2", "lp3", "lplde", "exact", "rk")


class _UsageError(Exception):
    """Bad invocation detected outside argparse (maps to exit 2)."""


def _env_j_max() -> int:
    raw = os.environ.get("LPLDE_JMAX", "5")
    try:
        value = int(raw)
    except ValueError:
        raise _UsageError(f"LPLDE_JMAX must be an integer >= 2, got {raw!r}") from None
    if value < 2:
        raise _UsageError(f"LPLDE_JMAX must be an integer >= 2, got {raw!r}")
    return value


def _resolve_j_max(args) -> int:
    return args.j_max if args.j_max is not None else _env_j_max()


def _print_point(omega2: float, lambda2: float | None = None) -> None:
    print("omega2 = %.17g" % omega2)
    print("T = %.17g" % (TWO_PI / math.sqrt(omega2)))
    if lambda2 is not None:
        print("lambda2 = %.17g" % lambda2)


def _rk_omega2_single(params, t_exact: float) -> float:
    traj = oracle.integrate(params, t_end=3.6 * t_exact, dt=t_exact / 5000.0)
    return (TWO_PI / oracle.period_from_trajectory(traj)) ** 2


def _cmd_duffing_freq(args) -> int:
    params = duffing.OscillatorParams(omega=args.omega, mu=args.mu,
                                      amplitude=args.amplitude)
    if args.method == "exact":
        _print_point((TWO_PI / oracle.duffing_exact_period(params)) ** 2)
    elif args.method == "rk":
        _print_point(_rk_omega2_single(params, oracle.duffing_exact_period(params)))
    else:
        result = duffing.omega2(params, args.method)
        _print_point(result.omega2,
                     result.lambda2_used if args.method == "lplde" else None)
    return 0


def _cmd_pendulum_period(args) -> int:
    if args.method == "exact":
        t = oracle.pendulum_exact_period(args.omega, args.amplitude)
        _print_point((TWO_PI / t) ** 2)
        return 0
    params = pendulum.PendulumParams(omega=args.omega, amplitude=args.amplitude,
                                     j_max=_resolve_j_max(args))
    if args.method == "rk":
        t = oracle.pendulum_exact_period(args.omega, args.amplitude)
        _print_point(_rk_omega2_single(params, t))
    elif args.method == "lplde":
        result = pendulum.omega2_lplde(params)
        _print_point(result.omega2, result.lambda2_used)
    else:
        result = pendulum.omega2_lp_baseline(params, int(args.method[2]))
        _print_point(result.omega2)
    return 0


def _emit(args, table: ResultTable, render) -> int:
    text = format_csv(table)
    if args.out is None:
        if getattr(args, "plot", False):
            raise _UsageError("--plot needs --out to know where the figure goes")
        sys.stdout.write(text)
        return 0
    out = Path(args.out)
    out.write_text(text)
    print(f"wrote {out}", file=sys.stderr)
    if getattr(args, "plot", False):
        from . import figures

        png = out.with_suffix(".png")
        render(table, str(png))
        print(f"wrote {png}", file=sys.stderr)
    return 0


def _sweep_fixed_params(args):
    if args.system == "pendulum":
        if args.var != "amplitude":
            raise _UsageError("the pendulum supports only --var amplitude")
        return pendulum.PendulumParams(omega=args.omega, amplitude=1.0,
                                       j_max=_resolve_j_max(args))
    if args.var == "amplitude":
        # placeholder amplitude; the sweep replaces it at every point
        amp = 1.0 if args.mu >= 0.0 else 0.5 * args.omega / math.sqrt(-args.mu)
        return duffing.OscillatorParams(omega=args.omega, mu=args.mu, amplitude=amp)
    return duffing.OscillatorParams(omega=args.omega, mu=0.0,
                                    amplitude=args.amplitude)


def _cmd_sweep(args) -> int:
    if args.start is None or args.stop is None:
        if args.var == "mu":
            args.start, args.stop = -0.5, 5.0
        else:
            args.start, args.stop = 0.1, 5.0
    methods = tuple(m.strip() for m in args.methods.split(",") if m.strip())
    if args.errors and "exact" not in methods:
        raise _UsageError("--errors needs 'exact' among --methods")
    spec = SweepSpec(
        variable=args.var,
        start=args.start,
        stop=args.stop,
        steps=args.steps,
        fixed=_sweep_fixed_params(args),
        methods=methods,
    )
    table = run_sweep(spec, period=args.period, errors=args.errors)
    from .figures import render_sweep

    return _emit(args, table, render_sweep)


def _trajectory_series(params, lambda2: float):
    """Harmonic coefficients C_j of the truncated solution
    sum_j C_j cos((2j+1) tau) for either system."""
    if isinstance(params, duffing.OscillatorParams):
        exp = duffing.trajectory(params, lambda2, order=3)
        width = max(len(s.coeffs) for s in exp.orders)
        coeffs = [0.0] * width
        for series in exp.orders:
            for j, c in enumerate(series.coeffs):
                coeffs[j] += c
        return coeffs
    tables = pendulum.build_tables(params)
    lam2 = lambda2
    coeffs = []
    for j in range(params.j_max + 1):
        c = tables.d1_bar[j] / lam2
        c += tables.d2a_bar[j] / lam2 ** 2 + tables.d2b_bar[j] / lam2
        if j == 0:
            c += params.amplitude
        coeffs.append(c)
    return coeffs


def _cmd_trajectory(args) -> int:
    if args.system == "duffing":
        params = duffing.OscillatorParams(omega=args.omega, mu=args.mu,
                                          amplitude=args.amplitude)
        t_exact = oracle.duffing_exact_period(params)
        freq = duffing.omega2(params, "lplde")
        om2, lam2 = freq.omega2, freq.lambda2_used
        order = 3
    else:
        params = pendulum.PendulumParams(omega=args.omega, amplitude=args.amplitude,
                                         j_max=_resolve_j_max(args))
        t_exact = oracle.pendulum_exact_period(args.omega, args.amplitude)
        freq = pendulum.omega2_lplde(params)
        om2, lam2 = freq.omega2, freq.lambda2_used
        order = 2
    coeffs = _trajectory_series(params, lam2)
    t_end = args.periods * t_exact
    dt = args.dt if args.dt is not None else t_exact / 5000.0
    traj = oracle.integrate(params, t_end=t_end, dt=dt)
    scale = math.sqrt(om2)
    rows = []
    for t, x, v in zip(traj.times, traj.positions, traj.velocities):
        series = math.fsum(c * math.cos((2 * j + 1) * scale * t)
                           for j, c in enumerate(coeffs))
        rows.append((float(t), float(x), float(v), series, abs(series - float(x))))
    table = ResultTable(
        header=("time", "rk_position", "rk_velocity", "series_position", "abs_error"),
        rows=rows,
        metadata={
            "system": args.system,
            "omega": repr(args.omega),
            "amplitude": repr(args.amplitude),
            **({"mu": repr(args.mu)} if args.system == "duffing" else
               {"j_max": str(params.j_max)}),
            "series_order": str(order),
            "omega2": repr(om2),
            "lambda2": repr(lam2),
            "dt": repr(dt),
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        },
    )
    from .figures import render_trajectory

    return _emit(args, table, render_trajectory)


def _cmd_variant_table(args) -> int:
    amplitudes = [float(tok) for tok in args.amplitudes.split(",") if tok.strip()]
    if not amplitudes:
        raise _UsageError("--amplitudes must list at least one value")
    rows = []
    for amp in amplitudes:
        params = duffing.OscillatorParams(omega=args.omega, mu=args.mu, amplitude=amp)
        exact = (TWO_PI / oracle.duffing_exact_period(params)) ** 2
        sub = duffing.omega2_closed_form(params, "substitution")
        legacy = duffing.omega2_closed_form(params, "legacy")
        rows.append((amp, sub, legacy, exact,
                     abs(sub - exact) / exact, abs(legacy - exact) / exact))
    table = ResultTable(
        header=("amplitude", "substitution_omega2", "legacy_omega2", "exact_omega2",
                "substitution_rel_err", "legacy_rel_err"),
        rows=rows,
        metadata={
            "system": "duffing",
            "omega": repr(args.omega),
            "mu": repr(args.mu),
            "note": "closed-form variants of the optimized order-3 frequency vs quadrature",
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        },
    )
    from .figures import render_sweep

    return _emit(args, table, render_sweep)


def _cmd_selfcheck(args) -> int:
    from .selfcheck import run_selfcheck

    return run_selfcheck()


def _add_out_plot(sub) -> None:
    sub.add_argument("--out", help="output CSV path (default: stdout)")
    sub.add_argument("--plot", action="store_true",
                     help="also render a PNG next to --out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lplde",
        description="Optimized perturbative frequencies for the cubic "
                    "oscillator and the plane pendulum, with exact references.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("duffing-freq", help="single-point cubic-oscillator frequency")
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--amplitude", type=float, required=True)
    p.add_argument("--method", choices=_POINT_METHODS, default="lplde")
    p.set_defaults(func=_cmd_duffing_freq)

    p = subs.add_parser("pendulum-period", help="single-point pendulum frequency")
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--amplitude", type=float, required=True)
    p.add_argument("--method", choices=_POINT_METHODS, default="lplde")
    p.add_argument("--j-max", type=int, default=None,
                   help="series truncation (default: LPLDE_JMAX or 5)")
    p.set_defaults(func=_cmd_pendulum_period)

    p = subs.add_parser("sweep", help="method comparison over a parameter grid")
    p.add_argument("--system", choices=("duffing", "pendulum"), required=True)
    p.add_argument("--var", choices=("amplitude", "mu"), default="amplitude")
    p.add_argument("--from", dest="start", type=float, default=None)
    p.add_argument("--to", dest="stop", type=float, default=None)
    p.add_argument("--steps", type=int, default=50)
    p.add_argument("--methods", default="lp3,lplde,exact",
                   help=f"comma-separated subset of {','.join(METHODS)}")
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--mu", type=float, default=1.0,
                   help="coupling (duffing; fixed value for amplitude sweeps)")
    p.add_argument("--amplitude", type=float, default=1.0,
                   help="fixed amplitude for mu sweeps")
    p.add_argument("--j-max", type=int, default=None)
    p.add_argument("--period", action="store_true",
                   help="add T = 2*pi/sqrt(omega2) columns")
    p.add_argument("--errors", action="store_true",
                   help="add |T - T_exact|/T_exact columns (needs exact)")
    _add_out_plot(p)
    p.set_defaults(func=_cmd_sweep)

    p = subs.add_parser("trajectory",
                        help="integrated vs series displacement samples")
    p.add_argument("--system", choices=("duffing", "pendulum"), required=True)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--amplitude", type=float, required=True)
    p.add_argument("--j-max", type=int, default=None)
    p.add_argument("--periods", type=float, default=3.0,
                   help="duration in exact periods")
    p.add_argument("--dt", type=float, default=None,
                   help="integrator step (default: T/5000)")
    _add_out_plot(p)
    p.set_defaults(func=_cmd_trajectory)

    p = subs.add_parser("variant-table",
                        help="closed-form frequency variants vs the exact value")
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--amplitudes", default="0.5,1,2,3,5,10")
    _add_out_plot(p)
    p.set_defaults(func=_cmd_variant_table)

    p = subs.add_parser("selfcheck", help="run the library invariant suite")
    p.set_defaults(func=_cmd_selfcheck)

    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors, 0 for --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 3
    except ConvergenceError as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return 4
    except (StepLimitError, EstimationError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
