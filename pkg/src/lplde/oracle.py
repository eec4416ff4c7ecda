"""Reference answers the perturbative results are judged against.

Two independent routes are provided for each oscillator:

* closed-form periods -- complete-elliptic-integral / quadrature expressions
  that are exact up to floating-point rounding; and
* direct numerical integration -- a fixed-step classical Runge-Kutta march
  whose period is extracted from velocity zero crossings.

Nothing here shares code with the perturbative modules beyond the special
functions, so agreement between the two sides is meaningful evidence.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .duffing import OscillatorParams
from .errors import DomainError, EstimationError, SeparatrixError, StepLimitError
from .pendulum import PendulumParams
from .specfun import QuadratureConfig, elliptic_k, integrate_turning_point

__all__ = [
    "Trajectory",
    "duffing_exact_period",
    "pendulum_exact_period",
    "integrate",
    "period_from_trajectory",
]

# Fraction of the separatrix amplitude beyond which the softening-case
# period is too close to divergence to resolve reliably.
_SEPARATRIX_MARGIN = 0.999999

_DEFAULT_MAX_STEPS = 5_000_000


@dataclass(eq=False)
class Trajectory:
    """Sampled solution of one oscillator run.

    times       strictly increasing sample instants, starting at 0
    positions   x(t) samples
    velocities  x'(t) samples
    energy      conserved energy evaluated at each sample
    """

    times: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    energy: np.ndarray

    def __post_init__(self):
        n = len(self.times)
        if not (len(self.positions) == n and len(self.velocities) == n
                and len(self.energy) == n):
            raise DomainError("trajectory arrays must have equal length")
        if n < 2:
            raise DomainError("trajectory needs at least two samples")
        if not np.all(np.diff(self.times) > 0.0):
            raise DomainError("trajectory times must be strictly increasing")

    @property
    def energy_drift(self) -> float:
        """max |E(t) - E(0)| normalized by max(|E(0)|, 1)."""
        e0 = float(self.energy[0])
        return float(np.max(np.abs(self.energy - e0))) / max(abs(e0), 1.0)


def duffing_exact_period(params: OscillatorParams,
                         config: QuadratureConfig | None = None) -> float:
    """Exact period of x'' + omega^2 x + mu x^3 = 0 started from rest at the
    amplitude.  Quadrature of the energy integral after the substitution
    x = A sin(phi), which leaves the smooth quarter-period integrand

        T/4 = integral_0^{pi/2} dphi / sqrt(omega^2 + mu A^2 (1 + sin^2 phi)/2).

    The period depends on the amplitude only through A^2 (even in A).
    """
    omega = params.omega
    mu = params.mu
    a = abs(params.amplitude)
    if mu < 0.0:
        a_sep = omega / math.sqrt(-mu)
        if a >= _SEPARATRIX_MARGIN * a_sep:
            raise SeparatrixError(
                f"amplitude {a} is within {1.0 - _SEPARATRIX_MARGIN:.0e} of the "
                f"separatrix {a_sep}; the period diverges there")
    a2mu = a * a * mu

    def quarter(phi: float) -> float:
        s = math.sin(phi)
        return 1.0 / math.sqrt(omega * omega + 0.5 * a2mu * (1.0 + s * s))

    return 4.0 * integrate_turning_point(quarter, 0.0, 0.5 * math.pi, config)


def pendulum_exact_period(omega: float, amplitude: float) -> float:
    """Exact period of theta'' + omega^2 sin(theta) = 0 released from rest:
    T = (4/omega) K(sin^2(A/2)).  Even in A; diverges as |A| -> pi."""
    if not omega > 0.0:
        raise DomainError(f"omega must be > 0, got {omega}")
    if not math.isfinite(amplitude):
        raise DomainError("amplitude must be finite")
    a = abs(amplitude)
    if a == 0.0:
        raise DomainError("amplitude must be nonzero")
    if a >= math.pi:
        raise SeparatrixError(
            f"|amplitude| = {a} >= pi: the pendulum period diverges at the "
            "separatrix and the motion is non-periodic beyond it")
    s = math.sin(0.5 * a)
    return 4.0 / omega * elliptic_k(s * s)


def _rhs_for(system) -> "callable":
    if isinstance(system, OscillatorParams):
        w2 = system.omega * system.omega
        mu = system.mu

        def acc(x: float) -> float:
            return -(w2 * x + mu * x * x * x)

        return acc
    if isinstance(system, PendulumParams):
        w2 = system.omega * system.omega

        def acc(x: float) -> float:
            return -w2 * math.sin(x)

        return acc
    raise DomainError(f"unsupported system type {type(system).__name__}")


def _energy_of(system, x: np.ndarray, v: np.ndarray) -> np.ndarray:
    if isinstance(system, OscillatorParams):
        w2 = system.omega * system.omega
        return 0.5 * v * v + 0.5 * w2 * x * x + 0.25 * system.mu * x ** 4
    w2 = system.omega * system.omega
    return 0.5 * v * v + w2 * (1.0 - np.cos(x))


def integrate(system, t_end: float, dt: float = 1e-3,
              max_steps: int = _DEFAULT_MAX_STEPS) -> Trajectory:
    """Fixed-step classical 4th-order Runge-Kutta march from (A, 0) to t_end.

    system is an OscillatorParams or PendulumParams instance; the initial
    state is x = amplitude, x' = 0.  Raises StepLimitError when the run
    would need more than max_steps steps.
    """
    if not (math.isfinite(t_end) and t_end > 0.0):
        raise DomainError(f"t_end must be finite and > 0, got {t_end}")
    if not (math.isfinite(dt) and dt > 0.0):
        raise DomainError(f"dt must be finite and > 0, got {dt}")
    n_steps = int(math.ceil(t_end / dt - 1e-12))
    if n_steps > max_steps:
        raise StepLimitError(
            f"integration needs {n_steps} steps of dt = {dt} to reach "
            f"t_end = {t_end}, above the cap of {max_steps}")
    acc = _rhs_for(system)

    times = np.empty(n_steps + 1)
    xs = np.empty(n_steps + 1)
    vs = np.empty(n_steps + 1)
    x = float(system.amplitude)
    v = 0.0
    times[0] = 0.0
    xs[0] = x
    vs[0] = v
    t = 0.0
    for i in range(1, n_steps + 1):
        h = min(dt, t_end - t)
        k1x = v
        k1v = acc(x)
        k2x = v + 0.5 * h * k1v
        k2v = acc(x + 0.5 * h * k1x)
        k3x = v + 0.5 * h * k2v
        k3v = acc(x + 0.5 * h * k2x)
        k4x = v + h * k3v
        k4v = acc(x + h * k3x)
        x += h * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0
        v += h * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0
        t += h
        times[i] = t
        xs[i] = x
        vs[i] = v
    return Trajectory(times=times, positions=xs, velocities=vs,
                      energy=_energy_of(system, xs, vs))


def period_from_trajectory(traj: Trajectory) -> float:
    """Oscillation period from negative-to-positive velocity zero crossings.

    Each crossing instant is located by linear interpolation between the
    bracketing samples; the period is the mean spacing of the crossings.
    Raises EstimationError when fewer than two crossings are present.
    """
    v = traj.velocities
    t = traj.times
    below = v[:-1] < 0.0
    above = v[1:] >= 0.0
    idx = np.nonzero(below & above)[0]
    if len(idx) < 2:
        raise EstimationError(
            f"found {len(idx)} negative-to-positive velocity crossings; "
            "need at least 2 to estimate a period (integrate longer)")
    frac = -v[idx] / (v[idx + 1] - v[idx])
    crossings = t[idx] + frac * (t[idx + 1] - t[idx])
    return float((crossings[-1] - crossings[0]) / (len(crossings) - 1))
