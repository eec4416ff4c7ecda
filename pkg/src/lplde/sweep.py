"""Parameter sweeps comparing the approximate frequencies against the exact
ones, with delimited-text output.

A sweep varies one scalar (amplitude or coupling) over a uniform grid and
evaluates a set of methods at every point:

    lp1, lp3   plain expansion, partial sums of order 1 / 3
    lplde      the optimized order-3 expansion
    exact      closed-form period (quadrature / elliptic integral)
    rk         direct integration + period extraction

A method that is undefined at a point (amplitude beyond a separatrix, zero
amplitude, ...) contributes NaN for that point instead of aborting the
sweep.  Output is CSV with one `# meta:` comment line; numbers carry 17
significant digits so they round-trip exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from datetime import datetime, timezone

from . import oracle
from .duffing import OscillatorParams
from .duffing import omega2 as duffing_omega2
from .errors import DomainError, EstimationError
from .pendulum import PendulumParams, omega2_lp_baseline, omega2_lplde

__all__ = ["SweepSpec", "ResultTable", "run_sweep", "format_csv", "METHODS"]

METHODS = ("lp1", "lp3", "lplde", "exact", "rk")

TWO_PI = 2.0 * math.pi
NAN = float("nan")


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: vary `variable` from start to stop over `steps` uniform
    points, holding the other fields of `fixed` constant.

    variable  'amplitude' or 'mu' ('mu' only for the cubic oscillator)
    fixed     OscillatorParams or PendulumParams whose swept field is
              ignored (it only seeds the non-swept values)
    methods   ordered subset of METHODS; column order follows it
    """

    variable: str
    start: float
    stop: float
    steps: int
    fixed: OscillatorParams | PendulumParams
    methods: tuple[str, ...]

    def __post_init__(self):
        if self.variable not in ("amplitude", "mu"):
            raise DomainError(f"variable must be 'amplitude' or 'mu', got {self.variable!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise DomainError("start and stop must be finite")
        if not self.start < self.stop:
            raise DomainError(f"start must be < stop, got {self.start} >= {self.stop}")
        if not (isinstance(self.steps, int) and self.steps >= 2):
            raise DomainError(f"steps must be an integer >= 2, got {self.steps}")
        if not isinstance(self.fixed, (OscillatorParams, PendulumParams)):
            raise DomainError("fixed must be OscillatorParams or PendulumParams")
        if self.variable == "mu" and isinstance(self.fixed, PendulumParams):
            raise DomainError("the pendulum has no 'mu' to sweep")
        methods = tuple(m.lower() for m in self.methods)
        if not methods:
            raise DomainError("methods must be non-empty")
        for m in methods:
            if m not in METHODS:
                raise DomainError(f"unknown method {m!r}; expected one of {METHODS}")
        if len(set(methods)) != len(methods):
            raise DomainError(f"duplicate method in {methods}")
        object.__setattr__(self, "methods", methods)

    @property
    def grid(self) -> list[float]:
        h = (self.stop - self.start) / (self.steps - 1)
        return [self.start + i * h for i in range(self.steps)]


@dataclass
class ResultTable:
    """Rectangular sweep output: column names, one numeric row per point,
    and free-form metadata (emitted on the `# meta:` line, excluded from
    byte-identity comparisons)."""

    header: tuple[str, ...]
    rows: list[tuple[float, ...]]
    metadata: dict

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.header):
                raise DomainError(
                    f"row of width {len(row)} does not match header width "
                    f"{len(self.header)}")


def _point_params(spec: SweepSpec, value: float):
    """Params with the swept field replaced, or None when invalid there.

    Both oscillators are even in the amplitude, so amplitude sweeps running
    through negative values evaluate at |value|.
    """
    try:
        if spec.variable == "amplitude":
            return replace(spec.fixed, amplitude=abs(value))
        return replace(spec.fixed, mu=value)
    except DomainError:
        return None


def _exact_omega2(spec: SweepSpec, value: float) -> float:
    if isinstance(spec.fixed, PendulumParams):
        t = oracle.pendulum_exact_period(spec.fixed.omega, abs(value))
        return (TWO_PI / t) ** 2
    params = _point_params(spec, value)
    if params is None:
        return NAN
    t = oracle.duffing_exact_period(params)
    return (TWO_PI / t) ** 2


def _rk_omega2(spec: SweepSpec, value: float) -> float:
    params = _point_params(spec, value)
    if params is None:
        return NAN
    om2 = _exact_omega2(spec, value)
    if math.isnan(om2):
        return NAN
    t_ref = TWO_PI / math.sqrt(om2)
    traj = oracle.integrate(params, t_end=3.6 * t_ref, dt=t_ref / 5000.0)
    return (TWO_PI / oracle.period_from_trajectory(traj)) ** 2


def _method_omega2(spec: SweepSpec, method: str, value: float) -> float:
    """Squared frequency of one method at one sweep point; NaN if undefined."""
    try:
        if method == "exact":
            return _exact_omega2(spec, value)
        if method == "rk":
            return _rk_omega2(spec, value)
        params = _point_params(spec, value)
        if params is None:
            return NAN
        if method == "lplde":
            if isinstance(params, PendulumParams):
                return omega2_lplde(params).omega2
            return duffing_omega2(params, "lplde").omega2
        order = int(method[2])
        if isinstance(params, PendulumParams):
            return omega2_lp_baseline(params, order).omega2
        return duffing_omega2(params, method).omega2
    except (DomainError, EstimationError):
        return NAN


def run_sweep(spec: SweepSpec, period: bool = False, errors: bool = False) -> ResultTable:
    """Evaluate every requested method over the sweep grid.

    period=True appends T = 2 pi / sqrt(Omega^2) columns; errors=True
    appends |T_method - T_exact| / T_exact columns for every non-exact
    method and requires 'exact' among the methods.
    """
    if errors and "exact" not in spec.methods:
        raise DomainError("error columns need the 'exact' method in the sweep")
    header: list[str] = [spec.variable]
    header += [f"{m}_omega2" for m in spec.methods]
    if period:
        header += [f"{m}_period" for m in spec.methods]
    if errors:
        header += [f"{m}_rel_err" for m in spec.methods if m != "exact"]

    rows: list[tuple[float, ...]] = []
    for value in spec.grid:
        omega2s = [_method_omega2(spec, m, value) for m in spec.methods]
        row = [value] + list(omega2s)
        periods = [TWO_PI / math.sqrt(o) if o > 0.0 else NAN for o in omega2s]
        if period:
            row += periods
        if errors:
            t_exact = periods[spec.methods.index("exact")]
            for m, t in zip(spec.methods, periods):
                if m == "exact":
                    continue
                good = not math.isnan(t) and not math.isnan(t_exact) and t_exact > 0.0
                row.append(abs(t - t_exact) / t_exact if good else NAN)
        rows.append(tuple(row))

    metadata = {
        "system": "pendulum" if isinstance(spec.fixed, PendulumParams) else "duffing",
        "variable": spec.variable,
        "start": repr(spec.start),
        "stop": repr(spec.stop),
        "steps": str(spec.steps),
        "methods": "|".join(spec.methods),
        "omega": repr(spec.fixed.omega),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    if isinstance(spec.fixed, PendulumParams):
        metadata["j_max"] = str(spec.fixed.j_max)
    elif spec.variable == "amplitude":
        metadata["mu"] = repr(spec.fixed.mu)
    else:
        metadata["amplitude"] = repr(spec.fixed.amplitude)
    return ResultTable(header=tuple(header), rows=rows, metadata=metadata)


def _format_number(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    return "%.17g" % x


def format_csv(table: ResultTable) -> str:
    """Render a ResultTable per the delimited schema: a `# meta:` line of
    key=value pairs joined by ';', a header line, then comma-separated rows
    with 17-significant-digit numbers and NaN markers."""
    meta = ";".join(f"{k}={v}" for k, v in table.metadata.items())
    lines = [f"# meta: {meta}", ",".join(table.header)]
    for row in table.rows:
        lines.append(",".join(_format_number(x) for x in row))
    return "\n".join(lines) + "\n"
