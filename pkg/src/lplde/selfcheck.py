"""Self-contained invariant suite, runnable as `lplde selfcheck`.

Each check re-verifies one of the structural guarantees the library is
built on -- special-function identities, boundary conditions, stationarity
of the optimized frequency, agreement between analytic coefficient tables
and a brute-force Fourier projection, energy conservation, and output
determinism.  Every check prints one line; the run fails (nonzero) if any
check fails.
"""
from __future__ import annotations

import math
import random
import sys

import numpy as np

from . import duffing, oracle, pendulum
from .specfun import bessel_j, elliptic_k, integrate_turning_point
from .sweep import SweepSpec, format_csv, run_sweep

__all__ = ["run_selfcheck", "CHECKS"]

_GRID_N = 4096
_TAU = 2.0 * math.pi * np.arange(_GRID_N) / _GRID_N


def _project(values: np.ndarray, n: int) -> float:
    """cos((2n+1) tau) coefficient by uniform trapezoidal projection --
    spectrally exact for band-limited inputs.  The textbook form of this
    projection is (1/pi) * integral of S(tau) e^{i(2n+1)tau}; its imaginary
    part vanishes identically for even cosine series, so the real cosine
    projection below is the whole value."""
    return 2.0 * float(np.mean(values * np.cos((2 * n + 1) * _TAU)))


def check_bessel_normalization():
    worst = 0.0
    for a in np.linspace(0.0, 10.0, 21):
        total = bessel_j(0, a) ** 2 + 2.0 * sum(bessel_j(n, a) ** 2 for n in range(1, 41))
        worst = max(worst, abs(total - 1.0))
    return worst <= 1e-12, f"max |J0^2 + 2 sum Jn^2 - 1| = {worst:.3e} (tol 1e-12)"


def check_bessel_recurrence():
    worst = 0.0
    for x in (0.5, 1.0, 2.0, 5.0, 7.5, 10.0):
        for n in range(1, 21):
            r = bessel_j(n - 1, x) + bessel_j(n + 1, x) - (2.0 * n / x) * bessel_j(n, x)
            worst = max(worst, abs(r))
    return worst <= 1e-11, f"max three-term residual = {worst:.3e} (tol 1e-11)"


def check_elliptic_k_increasing():
    ms = np.linspace(0.0, 0.999, 200)
    ks = [elliptic_k(m) for m in ms]
    ok = all(b > a for a, b in zip(ks, ks[1:]))
    return ok, "K(m) strictly increasing on [0, 0.999], 200 points"


def check_quadrature_linearity():
    def f(x):
        return 1.0 / math.sqrt(1.0 - x * x)

    def g(x):
        return x * x / math.sqrt(1.0 - x * x)

    combo = integrate_turning_point(lambda x: 2.0 * f(x) + 3.0 * g(x), -1.0, 1.0)
    parts = 2.0 * integrate_turning_point(f, -1.0, 1.0) + 3.0 * integrate_turning_point(g, -1.0, 1.0)
    rel = abs(combo - parts) / abs(parts)
    return rel <= 1e-9, f"|I(2f+3g) - 2I(f) - 3I(g)|/|.| = {rel:.3e} (tol 1e-9)"


def check_duffing_lambda_independence():
    p = duffing.OscillatorParams(omega=1.0, mu=1.0, amplitude=1.0)
    values = set()
    for lam2 in (0.0, 0.3, 0.75, 2.0):
        a = duffing.alpha_coefficients(p, lam2)
        values.add(a[0] + a[1])
    ok = values == {p.omega ** 2 + 0.75 * p.amplitude ** 2 * p.mu}
    return ok, f"alpha0 + alpha1 over four lambda^2 values: {sorted(values)}"


def _duffing_omega2_order3(p, lam2):
    return sum(duffing.alpha_coefficients(p, lam2))


def check_duffing_pms_stationarity():
    p = duffing.OscillatorParams(omega=1.0, mu=1.0, amplitude=1.0)
    lam2 = duffing.pms_lambda2(p)
    h = 1e-5 * (p.omega ** 2 + lam2)
    deriv = (_duffing_omega2_order3(p, lam2 + h) - _duffing_omega2_order3(p, lam2 - h)) / (2.0 * h)
    om2 = duffing.omega2(p, "lplde").omega2
    return abs(deriv) <= 1e-6 * om2, f"|dOmega^2/dlambda^2| = {abs(deriv):.3e} (tol {1e-6 * om2:.1e})"


def check_duffing_boundary_conditions():
    rng = random.Random(20240817)
    worst = 0.0
    for _ in range(20):
        omega = rng.uniform(0.5, 2.0)
        mu = rng.uniform(-0.5, 5.0)
        amp = rng.uniform(0.1, 2.0)
        if mu < 0.0:
            amp = min(amp, 0.9 * omega / math.sqrt(-mu))
        p = duffing.OscillatorParams(omega=omega, mu=mu, amplitude=amp)
        lam2 = rng.uniform(0.0, 3.0)
        exp = duffing.trajectory(p, lam2, order=3)
        for k, series in enumerate(exp.orders):
            scale = max(abs(c) for c in series.coeffs) + amp
            x0 = series.value(0.0) - (amp if k == 0 else 0.0)
            worst = max(worst, abs(x0) / scale, abs(series.deriv(0.0)) / scale)
    return worst <= 1e-13, f"max scaled |x_k(0)|, |x_k'(0)| deviation = {worst:.3e} (tol 1e-13)"


def check_duffing_ode_residual():
    p = duffing.OscillatorParams(omega=1.0, mu=1.0, amplitude=0.1)
    tau = np.linspace(0.0, 2.0 * math.pi, 1024)
    worst = 0.0
    for lam2 in (0.0, duffing.pms_lambda2(p)):
        exp = duffing.trajectory(p, lam2, order=3)
        om2 = sum(exp.alphas)
        x = np.zeros_like(tau)
        xpp = np.zeros_like(tau)
        for series in exp.orders:
            for j, c in enumerate(series.coeffs):
                k = 2 * j + 1
                x += c * np.cos(k * tau)
                xpp -= c * k * k * np.cos(k * tau)
        resid = om2 * xpp + p.omega ** 2 * x + p.mu * x ** 3
        worst = max(worst, float(np.max(np.abs(resid))))
    return worst <= 1e-8, f"max |Omega^2 x'' + omega^2 x + mu x^3| = {worst:.3e} (tol 1e-8)"


def check_duffing_argmin_consistency():
    ok = True
    details = []
    for amp in (0.5, 1.0, 2.0):
        p = duffing.OscillatorParams(omega=1.0, mu=1.0, amplitude=amp)
        exact = (2.0 * math.pi / oracle.duffing_exact_period(p)) ** 2
        top = 3.0 * amp * amp * p.mu
        grid = [top * i / 60.0 for i in range(61)]
        errs = [abs(_duffing_omega2_order3(p, l2) - exact) for l2 in grid]
        i_min = errs.index(min(errs))
        details.append(f"A={amp}: argmin at {i_min}/60 (stationary point at 15)")
        ok = ok and abs(i_min - 15) <= 1
    return ok, "; ".join(details)


def check_pendulum_jacobi_anger():
    worst = 0.0
    for a in (0.5, 1.0, 2.0, 3.0):
        t = pendulum.fourier_tables(pendulum.PendulumParams(omega=1.0, amplitude=a, j_max=10))
        worst = max(worst,
                    abs(math.fsum(t.c_odd) - math.sin(a)),
                    abs(math.fsum(t.c_even) - math.cos(a)))
    return worst <= 1e-10, f"max |sum c - sin A|, |sum ct - cos A| = {worst:.3e} (tol 1e-10)"


def check_pendulum_ct0_vs_j0():
    # evaluated via the closure formula directly so A can exceed the
    # oscillation domain cap of PendulumParams (the identity holds to A = 5)
    worst = 0.0
    for j_max in (10, 12):
        for a in (0.5, 1.0, 2.0, 3.0, 5.0):
            tail = [2.0 * (-1.0) ** j * bessel_j(2 * j, a) for j in range(1, j_max + 1)]
            ct0 = math.cos(a) - math.fsum(tail)
            worst = max(worst, abs(ct0 - bessel_j(0, a)))
    return worst <= 1e-10, f"max |ct0 - J0(A)| = {worst:.3e} (tol 1e-10)"


def check_pendulum_pms_stationarity():
    t = pendulum.build_tables(pendulum.PendulumParams(omega=1.0, amplitude=1.0, j_max=5))
    lam2 = pendulum.pms_lambda2(t)

    def om2(l2):
        return t.alpha1a + 2.0 * t.alpha2_bar / l2 + t.alpha3a / (l2 * l2)

    h = 1e-5 * lam2
    deriv = (om2(lam2 + h) - om2(lam2 - h)) / (2.0 * h)
    rel = abs(deriv) * lam2 / om2(lam2)
    return rel <= 1e-6, f"relative |dOmega^2/dlambda^2| at the stationary point = {rel:.3e} (tol 1e-6)"


def check_pendulum_truncation():
    worst = 0.0
    for a in (1.0, 2.0, 2.5):
        o5 = pendulum.omega2_lplde(pendulum.PendulumParams(1.0, a, j_max=5)).omega2
        o8 = pendulum.omega2_lplde(pendulum.PendulumParams(1.0, a, j_max=8)).omega2
        worst = max(worst, abs(o8 - o5) / o5)
    return worst <= 1e-6, f"max |Omega^2(j_max=8) - Omega^2(j_max=5)|/Omega^2 = {worst:.3e} (tol 1e-6)"


def check_pendulum_monotonicity():
    amps = np.linspace(0.05, 2.5, 40)
    values = [pendulum.omega2_lplde(pendulum.PendulumParams(1.0, float(a), j_max=5)).omega2
              for a in amps]
    ok = all(b < a for a, b in zip(values, values[1:]))
    return ok, "Omega^2(A) strictly decreasing on (0, 2.5], 40 points"


def _pendulum_grid_sources(params, tables, lam2):
    """S2 and S3 (alpha counterterms excluded) sampled on the tau grid,
    built from numerically reconstructed theta_1, theta_2."""
    w2 = params.omega ** 2
    th0 = params.amplitude * np.cos(_TAU)
    cos_th0 = np.cos(th0)
    sin_th0 = np.sin(th0)
    alpha1 = tables.alpha1a - lam2
    alpha2 = tables.alpha2_bar / lam2

    def series(coeffs):
        out = np.zeros(_GRID_N)
        for j, d in enumerate(coeffs):
            out += d * np.cos((2 * j + 1) * _TAU)
        return out

    def series_pp(coeffs):
        out = np.zeros(_GRID_N)
        for j, d in enumerate(coeffs):
            out -= d * (2 * j + 1) ** 2 * np.cos((2 * j + 1) * _TAU)
        return out

    d1 = np.array(tables.d1_bar) / lam2
    th1, th1pp = series(d1), series_pp(d1)
    s2 = -alpha1 * th1pp + lam2 * th1 - w2 * cos_th0 * th1
    d2 = np.array(tables.d2a_bar) / lam2 ** 2 + np.array(tables.d2b_bar) / lam2
    th2, th2pp = series(d2), series_pp(d2)
    s3 = (-alpha1 * th2pp - alpha2 * th1pp + lam2 * th2
          - w2 * (cos_th0 * th2 - 0.5 * sin_th0 * th1 ** 2))
    return s2, s3


def check_pendulum_grid_equivalence():
    params = pendulum.PendulumParams(omega=1.0, amplitude=1.0, j_max=5)
    t = pendulum.build_tables(params)
    jmax = params.j_max
    failures = []
    worst = 0.0

    def close(label, got, want, scale):
        nonlocal worst
        err = abs(got - want) / scale
        worst = max(worst, err)
        if err > 1e-8:
            failures.append(f"{label}: scaled err {err:.2e}")

    # c table vs direct projection of sin(A cos tau)
    sin_wave = np.sin(params.amplitude * np.cos(_TAU))
    c_scale = max(abs(v) for v in t.c_odd)
    for n in range(jmax + 1):
        close(f"c[{n}]", _project(sin_wave, n), t.c_odd[n], c_scale)

    s2_1, s3_1 = _pendulum_grid_sources(params, t, 1.0)
    s2_2, s3_2 = _pendulum_grid_sources(params, t, 2.0)
    _, s3_4 = _pendulum_grid_sources(params, t, 4.0)

    # order 2: p = s2a/lambda^2 + s2b at lambda^2 in {1, 2}
    s2a_scale = max(abs(v) for v in t.s2a_bar)
    s2b_scale = max(abs(v) for v in t.s2b_bar)
    for n in range(1, jmax + 1):
        p1, p2 = _project(s2_1, n), _project(s2_2, n)
        s2a_g = (p1 - p2) / 0.5
        s2b_g = p1 - s2a_g
        close(f"s2a[{n}]", s2a_g, t.s2a_bar[n], s2a_scale)
        close(f"s2b[{n}]", s2b_g, t.s2b_bar[n], s2b_scale)
    close("alpha2_bar", -_project(s2_1, 0) / params.amplitude, t.alpha2_bar,
          abs(t.alpha2_bar))

    # order 3: p = s3a/lambda^4 + s3b/lambda^2 + s3c at lambda^2 in {1, 2, 4}
    vander = np.array([[1.0, 1.0, 1.0], [0.25, 0.5, 1.0], [1.0 / 16.0, 0.25, 1.0]])
    s3_scales = []
    for n in range(jmax + 1):
        s3_scales.append(pendulum._s3_bars(params, t, n))
    s3a_scale = max(abs(v[0]) for v in s3_scales)
    s3b_scale = max(abs(v[1]) for v in s3_scales)
    s3c_scale = max(abs(v[2]) for v in s3_scales)
    for n in range(1, jmax + 1):
        rhs = np.array([_project(s3_1, n), _project(s3_2, n), _project(s3_4, n)])
        sol = np.linalg.solve(vander, rhs)
        want = s3_scales[n]
        close(f"s3a[{n}]", sol[0], want[0], s3a_scale)
        close(f"s3b[{n}]", sol[1], want[1], s3b_scale)
        close(f"s3c[{n}]", sol[2], want[2], s3c_scale)
    rhs0 = np.array([_project(s3_1, 0), _project(s3_2, 0), _project(s3_4, 0)])
    sol0 = np.linalg.solve(vander, rhs0)
    close("alpha3a", -sol0[0] / params.amplitude, t.alpha3a, abs(t.alpha3a))
    close("alpha3b", -sol0[1] / params.amplitude, t.alpha3b, abs(t.alpha3b))

    if failures:
        return False, "; ".join(failures)
    return True, f"all coefficient families match the grid projection; worst scaled err {worst:.3e} (tol 1e-8)"


def check_oracle_energy_conservation():
    worst = 0.0
    duff = duffing.OscillatorParams(omega=1.0, mu=1.0, amplitude=1.0)
    t_duff = oracle.duffing_exact_period(duff)
    worst = max(worst, oracle.integrate(duff, 10.0 * t_duff, dt=1e-3).energy_drift)
    pend = pendulum.PendulumParams(omega=1.0, amplitude=1.0)
    t_pend = oracle.pendulum_exact_period(1.0, 1.0)
    worst = max(worst, oracle.integrate(pend, 10.0 * t_pend, dt=1e-3).energy_drift)
    return worst <= 1e-8, f"max energy drift over 10 periods = {worst:.3e} (tol 1e-8)"


def check_oracle_quadrature_vs_agm():
    worst = 0.0
    for mu in (0.1, 1.0, 10.0):
        for amp in (0.5, 1.0, 2.0):
            p = duffing.OscillatorParams(omega=1.0, mu=mu, amplitude=amp)
            t_quad = oracle.duffing_exact_period(p)
            s = 1.0 + mu * amp * amp
            m = mu * amp * amp / (2.0 * s)
            t_agm = 4.0 * elliptic_k(m) / math.sqrt(s)
            worst = max(worst, abs(t_quad - t_agm) / t_agm)
    return worst <= 1e-9, f"max |T_quadrature - T_AGM|/T = {worst:.3e} (tol 1e-9)"


def check_oracle_period_evenness():
    worst = 0.0
    for amp in (0.5, 1.0, 2.0):
        worst = max(worst, abs(oracle.pendulum_exact_period(1.0, amp)
                               - oracle.pendulum_exact_period(1.0, -amp)))
    return worst == 0.0, f"max |T(A) - T(-A)| = {worst:.3e} (tol exact)"


def _small_sweep_csv():
    spec = SweepSpec(variable="amplitude", start=0.2, stop=1.2, steps=5,
                     fixed=duffing.OscillatorParams(1.0, 1.0, 1.0),
                     methods=("lp3", "lplde", "exact"))
    return format_csv(run_sweep(spec, period=True, errors=True))


def check_sweep_determinism():
    body1 = _small_sweep_csv().split("\n", 1)[1]
    body2 = _small_sweep_csv().split("\n", 1)[1]
    return body1 == body2, "CSV bodies of two identical runs are byte-identical"


def check_csv_roundtrip():
    ok = True
    for line in _small_sweep_csv().split("\n")[2:]:
        for tok in filter(None, line.split(",")):
            if tok == "NaN":
                continue
            ok = ok and ("%.17g" % float(tok)) == tok
    return ok, "every emitted numeric parses back and re-formats identically (17 digits)"


CHECKS = [
    ("bessel-normalization", check_bessel_normalization),
    ("bessel-recurrence", check_bessel_recurrence),
    ("elliptic-k-increasing", check_elliptic_k_increasing),
    ("quadrature-linearity", check_quadrature_linearity),
    ("duffing-lambda-independence", check_duffing_lambda_independence),
    ("duffing-pms-stationarity", check_duffing_pms_stationarity),
    ("duffing-boundary-conditions", check_duffing_boundary_conditions),
    ("duffing-ode-residual", check_duffing_ode_residual),
    ("duffing-argmin-consistency", check_duffing_argmin_consistency),
    ("pendulum-jacobi-anger", check_pendulum_jacobi_anger),
    ("pendulum-ct0-vs-j0", check_pendulum_ct0_vs_j0),
    ("pendulum-pms-stationarity", check_pendulum_pms_stationarity),
    ("pendulum-truncation", check_pendulum_truncation),
    ("pendulum-monotonicity", check_pendulum_monotonicity),
    ("pendulum-grid-equivalence", check_pendulum_grid_equivalence),
    ("oracle-energy-conservation", check_oracle_energy_conservation),
    ("oracle-quadrature-vs-agm", check_oracle_quadrature_vs_agm),
    ("oracle-period-evenness", check_oracle_period_evenness),
    ("sweep-determinism", check_sweep_determinism),
    ("csv-roundtrip", check_csv_roundtrip),
]


def run_selfcheck(stream=None) -> int:
    """Run every check, print one line each, return 0 iff all pass."""
    stream = stream if stream is not None else sys.stdout
    n_fail = 0
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashed check is a failed check
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        status = "ok  " if ok else "FAIL"
        print(f"{status} {name}: {detail}", file=stream)
        if not ok:
            n_fail += 1
    print(f"{len(CHECKS) - n_fail}/{len(CHECKS)} checks passed", file=stream)
    return 0 if n_fail == 0 else 1
