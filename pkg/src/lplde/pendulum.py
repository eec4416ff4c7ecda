"""Third-order distorted-time expansion of the plane pendulum

    theta'' + omega^2 sin(theta) = 0,   theta(0) = A,  theta'(0) = 0,

built on the same artificial-parameter interpolation as the cubic
oscillator, but with the full sine nonlinearity kept: sin(A cos tau) and
cos(A cos tau) are expanded in Fourier-Bessel series

    sin(A cos tau) = sum_j c_{2j+1} cos((2j+1) tau),  c_{2j+1} = 2(-1)^j J_{2j+1}(A),
    cos(A cos tau) = sum_j ct_{2j}  cos(2j tau),      ct_{2j}  = 2(-1)^j J_{2j}(A),

and every perturbative order becomes a finite odd-harmonic table once the
series are truncated at a shared index j_max.  Coefficients are stored in
lambda-scaled ("bar") form -- multiplied by the power of lambda^2 that makes
them lambda-independent -- so a single table serves every lambda:

    d^(1) = d1_bar / lambda^2,
    s^(2) = s2a_bar / lambda^2 + s2b_bar,
    d^(2) = d2a_bar / lambda^4 + d2b_bar / lambda^2,
    s^(3) = s3a / lambda^4 + s3b / lambda^2 + s3c.

The n = 0 harmonic of each source must vanish (no resonant forcing), which
fixes alpha_2 and alpha_3; stationarity of

    Omega^2 = alpha1a + 2 alpha2_bar / lambda^2 + alpha3a / lambda^4

in lambda^2 then gives lambda^2 = -alpha3a / alpha2_bar and the optimized

    Omega^2 = alpha1a - alpha2_bar^2 / alpha3a.

alpha1a = omega^2 c_1 / A is the lambda-independent part of alpha_0 +
alpha_1; it is a reconstruction (the unique combination consistent with
orders 0-1), not a quantity with an independent printed definition.
"""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass, replace

from .duffing import FrequencyResult, OscillatorParams
from .duffing import omega2 as _duffing_omega2
from .errors import (
    DegeneratePmsError,
    DomainError,
    InternalConsistencyError,
    NoStationaryPointError,
    UnphysicalResultError,
)
from .specfun import bessel_j

__all__ = [
    "PendulumParams",
    "PendulumTables",
    "fourier_tables",
    "order1",
    "order2",
    "s3_source_coefficient",
    "alpha3",
    "build_tables",
    "pms_lambda2",
    "omega2_lplde",
    "omega2_lp_baseline",
]


@dataclass(frozen=True)
class PendulumParams:
    """Pendulum parameters.

    omega      small-oscillation frequency sqrt(g/l) (rad/time), > 0
    amplitude  angular amplitude A (rad); 0 < A < pi -- A = pi is the
               unstable equilibrium where the period diverges
    j_max      shared truncation index of all harmonic series, >= 2
    """

    omega: float
    amplitude: float
    j_max: int = 5

    def __post_init__(self):
        if not self.omega > 0.0:
            raise DomainError(f"omega must be > 0, got {self.omega}")
        if not 0.0 < self.amplitude < math.pi:
            raise DomainError(
                f"amplitude must lie in (0, pi), got {self.amplitude}; "
                "the motion is non-oscillatory at/beyond pi")
        if not (math.isfinite(self.omega) and math.isfinite(self.amplitude)):
            raise DomainError("parameters must be finite")
        if not (isinstance(self.j_max, int) and self.j_max >= 2):
            raise DomainError(f"j_max must be an integer >= 2, got {self.j_max}")


@dataclass(frozen=True)
class PendulumTables:
    """Coefficient tables of the expansion, built in stages.

    Index j runs 0..j_max everywhere.  Entries are lambda-scaled as
    described in the module docstring; fields beyond c_odd/c_even are None
    until the corresponding stage has run.
    """

    c_odd: tuple[float, ...]
    c_even: tuple[float, ...]
    d1_bar: tuple[float, ...] | None = None
    alpha1a: float | None = None
    s2a_bar: tuple[float, ...] | None = None
    s2b_bar: tuple[float, ...] | None = None
    alpha2_bar: float | None = None
    d2a_bar: tuple[float, ...] | None = None
    d2b_bar: tuple[float, ...] | None = None
    alpha3a: float | None = None
    alpha3b: float | None = None


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)


def fourier_tables(params: PendulumParams) -> PendulumTables:
    """Stage 1: the Fourier-Bessel tables of sin(A cos tau) and cos(A cos tau).

    c_even[0] is closed through cos A minus the truncated tail rather than
    taken as J_0(A) directly, so that the truncated cosine series still sums
    exactly to cos A at tau = 0.
    """
    A = params.amplitude
    J = params.j_max
    c_odd = tuple(2.0 * (-1.0) ** j * bessel_j(2 * j + 1, A) for j in range(J + 1))
    tail = [2.0 * (-1.0) ** j * bessel_j(2 * j, A) for j in range(1, J + 1)]
    c_even = (math.cos(A) - math.fsum(tail),) + tuple(tail)
    return PendulumTables(c_odd=c_odd, c_even=c_even)


def order1(params: PendulumParams, tables: PendulumTables) -> PendulumTables:
    """Stage 2: first-order solution table and the frequency head term.

    d1_bar[j] = omega^2 c_{2j+1} / (4 j (j+1)) for j >= 1; the fundamental
    entry is closed by theta_1(0) = 0.  alpha1a = omega^2 c_1 / A.
    """
    w2 = params.omega * params.omega
    J = params.j_max
    d1 = [0.0] * (J + 1)
    for j in range(1, J + 1):
        d1[j] = w2 * tables.c_odd[j] / (4.0 * j * (j + 1))
    d1[0] = -math.fsum(d1[1:])
    alpha1a = w2 * tables.c_odd[0] / params.amplitude
    return replace(tables, d1_bar=tuple(d1), alpha1a=alpha1a)


def _cos_product_coeff(tables: PendulumTables, vec, n: int) -> float:
    """Twice the cos((2n+1) tau) coefficient of cos(theta_0) * series(vec),
    where series(vec) = sum_j vec[j] cos((2j+1) tau); callers fold the
    standard product half-angles by multiplying with 1/2.  Sums truncate at
    the table edge."""
    ct = tables.c_even
    J = len(vec) - 1
    terms = []
    for j in range(n, J + 1):
        terms.append(vec[j] * ct[j - n])
    for l in range(n + 1, J + 1):
        if l - n - 1 <= J:
            terms.append(vec[l - n - 1] * ct[l])
    for j in range(0, min(n, J) + 1):
        terms.append(vec[j] * ct[n - j])
    return math.fsum(terms)


def order2(params: PendulumParams, tables: PendulumTables) -> PendulumTables:
    """Stage 3: second-order sources, alpha2_bar, and solution tables.

    s2a_bar[n] = alpha1a (2n+1)^2 d1_bar[n] - (omega^2/2) * <cos(theta_0) theta_1>_n
    s2b_bar[n] = -4 n (n+1) d1_bar[n]
    alpha2_bar = -s2a_bar[0] / A          (no resonant forcing at order 2)
    d2a_bar[j] = -s2a_bar[j] / (4 j (j+1)) for j >= 1,  d2b_bar = d1_bar,
    with the j = 0 entries closed by theta_2(0) = 0 separately per lambda
    power.
    """
    _require(tables.d1_bar is not None, "order1 must run before order2")
    w2 = params.omega * params.omega
    A = params.amplitude
    J = params.j_max
    d1 = tables.d1_bar
    a1 = tables.alpha1a
    s2a = []
    s2b = []
    for n in range(J + 1):
        k2 = float((2 * n + 1) ** 2)
        s2a.append(a1 * k2 * d1[n] - 0.5 * w2 * _cos_product_coeff(tables, d1, n))
        s2b.append(-4.0 * n * (n + 1) * d1[n])
    alpha2_bar = -s2a[0] / A
    d2a = [0.0] * (J + 1)
    for j in range(1, J + 1):
        d2a[j] = -s2a[j] / (4.0 * j * (j + 1))
    d2a[0] = -math.fsum(d2a[1:])
    return replace(tables, s2a_bar=tuple(s2a), s2b_bar=tuple(s2b),
                   alpha2_bar=alpha2_bar, d2a_bar=tuple(d2a), d2b_bar=d1)


def _triple_product_coeff(params: PendulumParams, tables: PendulumTables, n: int) -> float:
    """cos((2n+1) tau) coefficient of (omega^2/2) sin(theta_0) theta_1^2 in
    lambda-scaled form (the theta_1^2 factor contributes lambda^-4).

    Reducing the triple cosine product leaves seven non-empty index families
    (an eighth is empty because its Kronecker condition cannot be met); two
    pairs are transposes of each other in (m, j) and are folded as doubles.
    The sine-series index k can exceed j_max here, so odd coefficients are
    drawn from an extended table.
    """
    w2 = params.omega * params.omega
    A = params.amplitude
    J = params.j_max
    d1 = tables.d1_bar
    # extended odd table: k = n + m + j + 1 reaches 3 j_max + 1
    c_ext = [2.0 * (-1.0) ** k * bessel_j(2 * k + 1, A) for k in range(3 * J + 2)]
    terms = []
    # k = n - m - j - 1 >= 0
    for j in range(0, min(n, J) + 1):
        for m in range(0, min(n - j - 1, J) + 1):
            terms.append(c_ext[n - m - j - 1] * d1[m] * d1[j])
    # k = j - n - m - 1 >= 0, plus its (m <-> j) transpose
    for m in range(0, J + 1):
        for j in range(n + m + 1, J + 1):
            terms.append(2.0 * c_ext[j - n - m - 1] * d1[m] * d1[j])
    # k = n + j - m >= 0, plus its transpose
    for j in range(0, J + 1):
        for m in range(0, min(n + j, J) + 1):
            terms.append(2.0 * c_ext[n + j - m] * d1[m] * d1[j])
    # k = m + j - n >= 0
    for j in range(0, J + 1):
        for m in range(max(0, n - j), J + 1):
            terms.append(c_ext[m + j - n] * d1[m] * d1[j])
    # k = n + m + j + 1
    for j in range(0, J + 1):
        for m in range(0, J + 1):
            terms.append(c_ext[n + m + j + 1] * d1[m] * d1[j])
    return w2 / 8.0 * math.fsum(terms)


def _s3_bars(params: PendulumParams, tables: PendulumTables, n: int) -> tuple[float, float, float]:
    """lambda-decomposed third-order source parts (s3a, s3b, s3c) at
    harmonic n, excluding the alpha_3 counterterm."""
    _require(tables.d2a_bar is not None, "order2 must run before third-order sources")
    w2 = params.omega * params.omega
    a1 = tables.alpha1a
    a2 = tables.alpha2_bar
    d1 = tables.d1_bar
    d2a = tables.d2a_bar
    d2b = tables.d2b_bar
    k2 = float((2 * n + 1) ** 2)
    s3a = (k2 * (a1 * d2a[n] + a2 * d1[n])
           - 0.5 * w2 * _cos_product_coeff(tables, d2a, n)
           + _triple_product_coeff(params, tables, n))
    s3b = (k2 * (a1 * d2b[n] - d2a[n]) + d2a[n]
           - 0.5 * w2 * _cos_product_coeff(tables, d2b, n))
    s3c = -4.0 * n * (n + 1) * d2b[n]
    return (s3a, s3b, s3c)


def s3_source_coefficient(params: PendulumParams, tables: PendulumTables,
                          n: int, lambda2: float) -> float:
    """Full third-order source coefficient s^(3)_{2n+1} at a given lambda^2,
    assembled from the lambda-decomposed parts as s3a/lambda^4 +
    s3b/lambda^2 + s3c.

    When the tables carry alpha3a/alpha3b, their counterterm (which acts
    only on the fundamental) is included, so n = 0 evaluates to zero up to
    rounding -- that cancellation is what defines alpha_3.
    """
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"harmonic index must be a non-negative integer, got {n}")
    if n > params.j_max:
        raise DomainError(f"harmonic index {n} exceeds j_max = {params.j_max}")
    if not lambda2 > 0.0:
        raise DomainError(f"lambda2 must be > 0, got {lambda2}")
    s3a, s3b, s3c = _s3_bars(params, tables, n)
    if n == 0 and tables.alpha3a is not None:
        s3a += tables.alpha3a * params.amplitude
        s3b += tables.alpha3b * params.amplitude
    return s3a / (lambda2 * lambda2) + s3b / lambda2 + s3c


def alpha3(params: PendulumParams, tables: PendulumTables) -> tuple[float, float]:
    """Third-order frequency coefficients (alpha3a, alpha3b), fixed by the
    vanishing of the fundamental harmonic of the third-order source,
    separately per lambda power.

    alpha3b must reproduce alpha2_bar (they have identical closed forms); a
    mismatch beyond 1e-10 relative signals an implementation bug and raises
    InternalConsistencyError.  At small amplitude both values sink toward the
    roundoff of the assembly, whose magnitude is eps * max|d1_bar| / A, so the
    guard carries that absolute floor (x64) to keep the relative check from
    misfiring on noise.
    """
    _require(tables.d2a_bar is not None, "order2 must run before alpha3")
    s3a0, s3b0, _ = _s3_bars(params, tables, 0)
    a3a = -s3a0 / params.amplitude
    a3b = -s3b0 / params.amplitude
    noise = (64.0 * sys.float_info.epsilon
             * max(abs(v) for v in tables.d1_bar) / params.amplitude)
    if abs(a3b - tables.alpha2_bar) > 1e-10 * abs(tables.alpha2_bar) + noise:
        raise InternalConsistencyError(
            f"alpha3b = {a3b!r} disagrees with alpha2_bar = "
            f"{tables.alpha2_bar!r}; the assembly is internally inconsistent")
    return (a3a, a3b)


def build_tables(params: PendulumParams) -> PendulumTables:
    """Run the whole pipeline and return fully populated tables."""
    tables = order2(params, order1(params, fourier_tables(params)))
    a3a, a3b = alpha3(params, tables)
    return replace(tables, alpha3a=a3a, alpha3b=a3b)


def pms_lambda2(tables: PendulumTables) -> float:
    """Stationary point of Omega^2(lambda^2): lambda^2 = -alpha3a/alpha2_bar.

    Raises DegeneratePmsError when alpha2_bar vanishes (no equation to
    solve) and NoStationaryPointError when the ratio is not positive.
    """
    _require(tables.alpha3a is not None, "alpha3 must run before pms_lambda2")
    if tables.alpha2_bar == 0.0:
        raise DegeneratePmsError(
            "alpha2_bar = 0: the stationarity condition is degenerate")
    lam2 = -tables.alpha3a / tables.alpha2_bar
    if not lam2 > 0.0:
        raise NoStationaryPointError(
            f"-alpha3a/alpha2_bar = {lam2!r} is not positive; no stationary "
            "frequency exists for these tables")
    return lam2


def omega2_lplde(params: PendulumParams) -> FrequencyResult:
    """Optimized squared frequency Omega^2 = alpha1a - alpha2_bar^2/alpha3a,
    i.e. the third-order Omega^2(lambda^2) at its stationary point."""
    tables = build_tables(params)
    lam2 = pms_lambda2(tables)
    om2 = tables.alpha1a - tables.alpha2_bar * tables.alpha2_bar / tables.alpha3a
    if not om2 > 0.0:
        raise UnphysicalResultError(
            f"optimized Omega^2 = {om2!r} is not positive at A = "
            f"{params.amplitude}, j_max = {params.j_max}")
    return FrequencyResult(
        omega2=om2,
        method="lplde",
        lambda2_used=lam2,
        diagnostics={
            "j_max": float(params.j_max),
            "alpha1a": tables.alpha1a,
            "alpha2_bar": tables.alpha2_bar,
            "alpha3a": tables.alpha3a,
            "alpha3b": tables.alpha3b,
        },
    )


def omega2_lp_baseline(params: PendulumParams, order: int) -> FrequencyResult:
    """Plain-expansion reference curve: the cubic oscillator's frequency at
    mu = -omega^2/6, the Taylor truncation sin(theta) ~ theta - theta^3/6.

    The cubic model is periodic from rest only below amplitude sqrt(6) at
    this mu, so larger pendulum amplitudes are rejected even though the
    pendulum itself oscillates for all A < pi.
    """
    if order not in (1, 2, 3):
        raise DomainError(f"order must be 1, 2, or 3, got {order}")
    if params.amplitude >= math.sqrt(6.0):
        raise DomainError(
            f"amplitude {params.amplitude} is outside the cubic-truncation "
            f"model's periodic regime (A < sqrt(6) ~ {math.sqrt(6.0):.6f})")
    osc = OscillatorParams(omega=params.omega,
                           mu=-params.omega * params.omega / 6.0,
                           amplitude=params.amplitude)
    return _duffing_omega2(osc, f"lp{order}")
