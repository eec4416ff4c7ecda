"""Exact-reference contracts: closed-form periods, the fixed-step integrator,
and period extraction from trajectories."""
import math

import numpy as np
import pytest

from lplde.duffing import OscillatorParams
from lplde.errors import (
    DomainError,
    EstimationError,
    SeparatrixError,
    StepLimitError,
)
from lplde.oracle import (
    Trajectory,
    duffing_exact_period,
    integrate,
    pendulum_exact_period,
    period_from_trajectory,
)
from lplde.pendulum import PendulumParams
from lplde.specfun import QuadratureConfig

import oracles

P111 = OscillatorParams(omega=1.0, mu=1.0, amplitude=1.0)

# Frozen from the AGM closed forms in oracles.py.
T_DUFFING_111 = 4.76802202910246
T_PENDULUM_HALF_PI = 7.416298709205487


class TestDuffingExactPeriod:
    def test_harmonic_limit(self):
        p = OscillatorParams(omega=1.0, mu=0.0, amplitude=1.0)
        assert duffing_exact_period(p) == pytest.approx(2.0 * math.pi, rel=1e-9)

    def test_reference_point(self):
        assert duffing_exact_period(P111) == pytest.approx(T_DUFFING_111, rel=1e-9)
        assert duffing_exact_period(P111) == pytest.approx(4.768022, abs=1e-6)

    def test_agrees_with_agm_closed_form(self):
        for mu in (0.1, 1.0, 10.0):
            for amp in (0.5, 1.0, 2.0):
                p = OscillatorParams(omega=1.0, mu=mu, amplitude=amp)
                assert duffing_exact_period(p) == pytest.approx(
                    oracles.duffing_period_agm(1.0, mu, amp), rel=1e-9), (mu, amp)

    def test_respects_quadrature_config(self):
        value = duffing_exact_period(P111, QuadratureConfig(rel_tol=1e-12))
        assert value == pytest.approx(T_DUFFING_111, rel=1e-11)

    def test_softening_period_grows_toward_separatrix(self):
        # the period must grow without bound approaching A = omega/sqrt(-mu);
        # the guard cuts evaluation off at 0.999999 of the separatrix, and
        # just below the cutoff the period already exceeds 5x the small-A one
        small = duffing_exact_period(OscillatorParams(1.0, -1.0, 0.01))
        ladder = [duffing_exact_period(OscillatorParams(1.0, -1.0, a))
                  for a in (0.5, 0.8, 0.95, 0.9999989)]
        assert all(b > a for a, b in zip(ladder, ladder[1:]))
        assert ladder[-1] > 5.0 * small

    def test_separatrix_guard(self):
        # amplitudes inside the constructor's domain can still sit within
        # the quadrature margin of the separatrix and are rejected
        with pytest.raises(SeparatrixError):
            duffing_exact_period(OscillatorParams(1.0, -1.0, 0.9999995))


class TestPendulumExactPeriod:
    def test_small_oscillation_limit(self):
        assert pendulum_exact_period(1.0, 1e-9) == pytest.approx(
            2.0 * math.pi, rel=1e-12)

    def test_right_angle_amplitude(self):
        assert pendulum_exact_period(1.0, math.pi / 2.0) == pytest.approx(
            T_PENDULUM_HALF_PI, rel=1e-12)
        assert pendulum_exact_period(1.0, math.pi / 2.0) == pytest.approx(
            7.4162987092, abs=1e-9)

    def test_agrees_with_agm_closed_form(self):
        for amp in (0.1, 0.5, 1.0, 2.0, 3.0):
            assert pendulum_exact_period(1.0, amp) == pytest.approx(
                oracles.pendulum_period_agm(1.0, amp), rel=1e-12), amp

    def test_even_in_amplitude(self):
        assert pendulum_exact_period(1.0, -1.3) == pendulum_exact_period(1.0, 1.3)

    def test_omega_scaling(self):
        assert pendulum_exact_period(2.0, 1.0) == pytest.approx(
            0.5 * pendulum_exact_period(1.0, 1.0), rel=1e-15)

    def test_separatrix_rejected(self):
        with pytest.raises(SeparatrixError):
            pendulum_exact_period(1.0, math.pi)
        with pytest.raises(SeparatrixError):
            pendulum_exact_period(1.0, 3.5)

    def test_invalid_inputs_rejected(self):
        with pytest.raises(DomainError):
            pendulum_exact_period(0.0, 1.0)
        with pytest.raises(DomainError):
            pendulum_exact_period(1.0, 0.0)
        with pytest.raises(DomainError):
            pendulum_exact_period(1.0, math.nan)


class TestIntegrate:
    def test_harmonic_returns_to_start(self):
        p = OscillatorParams(omega=1.0, mu=0.0, amplitude=1.0)
        traj = integrate(p, t_end=2.0 * math.pi, dt=1e-3)
        assert float(traj.positions[-1]) == pytest.approx(1.0, abs=1e-9)

    def test_positions_revisit_amplitude_each_period(self):
        t_exact = duffing_exact_period(P111)
        traj = integrate(P111, t_end=3.0 * t_exact, dt=t_exact / 20000.0)
        for k in (1, 2, 3):
            idx = int(np.argmin(np.abs(traj.times - k * t_exact)))
            assert float(traj.positions[idx]) == pytest.approx(1.0, abs=1e-5), k

    def test_pendulum_velocity_sign_changes_twice_per_period(self):
        # released from rest, the velocity crosses zero twice per period
        # (mid-period and full-period).  The full-period crossing falls
        # exactly on the final sample, so extend the window 5% past one
        # period to resolve it; the next crossing is half a period away.
        p = PendulumParams(omega=1.0, amplitude=math.pi / 2.0, j_max=5)
        t_exact = pendulum_exact_period(1.0, math.pi / 2.0)
        traj = integrate(p, t_end=1.05 * t_exact, dt=1e-3)
        v = traj.velocities
        crossings = int(np.sum(v[:-1] * v[1:] < 0.0))
        assert crossings == 2

    def test_energy_conservation_over_ten_periods(self):
        t_exact = duffing_exact_period(P111)
        traj = integrate(P111, t_end=10.0 * t_exact, dt=1e-3)
        assert traj.energy_drift <= 1e-8

        p = PendulumParams(omega=1.0, amplitude=2.0, j_max=5)
        t_exact = pendulum_exact_period(1.0, 2.0)
        traj = integrate(p, t_end=10.0 * t_exact, dt=1e-3)
        assert traj.energy_drift <= 1e-8

    def test_step_cap(self):
        with pytest.raises(StepLimitError):
            integrate(P111, t_end=10.0, dt=1e-9)

    def test_invalid_inputs(self):
        with pytest.raises(DomainError):
            integrate(P111, t_end=-1.0)
        with pytest.raises(DomainError):
            integrate(P111, t_end=1.0, dt=0.0)
        with pytest.raises(DomainError):
            integrate(object(), t_end=1.0)

    def test_trajectory_validation(self):
        t = np.array([0.0, 1.0, 2.0])
        x = np.zeros(3)
        with pytest.raises(DomainError):
            Trajectory(times=t, positions=x, velocities=np.zeros(2), energy=x)
        with pytest.raises(DomainError):
            Trajectory(times=np.array([0.0, 0.0, 1.0]), positions=x,
                       velocities=x, energy=x)
        with pytest.raises(DomainError):
            Trajectory(times=np.array([0.0]), positions=np.array([1.0]),
                       velocities=np.array([0.0]), energy=np.array([0.5]))


class TestPeriodFromTrajectory:
    def test_harmonic(self):
        p = OscillatorParams(omega=1.0, mu=0.0, amplitude=1.0)
        traj = integrate(p, t_end=6.0 * math.pi + 1.0, dt=1e-3)
        assert period_from_trajectory(traj) == pytest.approx(
            2.0 * math.pi, abs=1e-7)

    def test_duffing_reference(self):
        traj = integrate(P111, t_end=3.2 * T_DUFFING_111, dt=1e-3)
        assert period_from_trajectory(traj) == pytest.approx(4.768022, abs=1e-5)
        assert period_from_trajectory(traj) == pytest.approx(
            T_DUFFING_111, rel=1e-6)

    def test_pendulum_reference(self):
        p = PendulumParams(omega=1.0, amplitude=math.pi / 2.0, j_max=5)
        traj = integrate(p, t_end=3.2 * T_PENDULUM_HALF_PI, dt=1e-3)
        assert period_from_trajectory(traj) == pytest.approx(7.41630, abs=1e-5)
        assert period_from_trajectory(traj) == pytest.approx(
            T_PENDULUM_HALF_PI, rel=1e-6)

    def test_insufficient_crossings_rejected(self):
        traj = integrate(P111, t_end=0.5 * T_DUFFING_111, dt=1e-3)
        with pytest.raises(EstimationError):
            period_from_trajectory(traj)
