"""Cubic-oscillator expansion contracts: alpha table, solutions, optimized
frequency, and the algebraic invariances that pin the formulas down."""
import math
import random

import numpy as np
import pytest

from lplde.duffing import (
    OscillatorParams,
    alpha_coefficients,
    evaluate,
    omega2,
    omega2_closed_form,
    pms_lambda2,
    rescaling_check,
    trajectory,
)
from lplde.errors import DomainError
from lplde.oracle import duffing_exact_period

import oracles

P111 = OscillatorParams(omega=1.0, mu=1.0, amplitude=1.0)


class TestParams:
    def test_rejects_nonpositive_omega_and_amplitude(self):
        with pytest.raises(DomainError):
            OscillatorParams(omega=0.0, mu=1.0, amplitude=1.0)
        with pytest.raises(DomainError):
            OscillatorParams(omega=1.0, mu=1.0, amplitude=0.0)
        with pytest.raises(DomainError):
            OscillatorParams(omega=1.0, mu=1.0, amplitude=-1.0)

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            OscillatorParams(omega=1.0, mu=math.nan, amplitude=1.0)

    def test_softening_separatrix_guard(self):
        # mu < 0 is periodic from rest only for A < omega/sqrt(-mu)
        OscillatorParams(omega=1.0, mu=-1.0, amplitude=0.99)
        with pytest.raises(DomainError):
            OscillatorParams(omega=1.0, mu=-1.0, amplitude=1.0)
        with pytest.raises(DomainError):
            OscillatorParams(omega=2.0, mu=-4.0, amplitude=1.5)


class TestAlphaCoefficients:
    def test_values_at_lambda_zero(self):
        assert alpha_coefficients(P111, 0.0) == (
            1.0, 0.75, -3.0 / 128.0, 9.0 / 512.0)

    def test_harmonic_limit(self):
        p = OscillatorParams(omega=1.0, mu=0.0, amplitude=1.0)
        assert alpha_coefficients(p, 0.0) == (1.0, 0.0, 0.0, 0.0)

    def test_values_at_stationary_lambda(self):
        # at lambda^2 = 3 A^2 mu / 4 the order-1 and order-3 terms vanish
        a0, a1, a2, a3 = alpha_coefficients(P111, 0.75)
        assert a0 == 1.75
        assert a1 == 0.0
        assert a2 == pytest.approx(-3.0 / (128.0 * 1.75), rel=1e-15)
        assert a3 == 0.0

    def test_head_term_is_exact_for_any_lambda(self):
        for lam2 in (0.0, 0.3, 0.75, 2.0):
            assert alpha_coefficients(P111, lam2)[0] == 1.0 + lam2

    def test_degenerate_denominator_rejected(self):
        with pytest.raises(DomainError):
            alpha_coefficients(P111, -1.0)

    def test_lambda_independence_of_order1_sum(self):
        # alpha_0 + alpha_1 = omega^2 + 3 A^2 mu / 4 identically in lambda
        for p in (P111, OscillatorParams(omega=2.0, mu=0.3, amplitude=1.7)):
            expected = p.omega ** 2 + 0.75 * p.amplitude ** 2 * p.mu
            for lam2 in (0.0, 0.3, 0.75, 2.0):
                a = alpha_coefficients(p, lam2)
                assert a[0] + a[1] == expected, lam2


class TestPmsLambda2:
    def test_printed_values(self):
        assert pms_lambda2(P111) == 0.75
        assert pms_lambda2(OscillatorParams(1.0, 1.0, 2.0)) == 3.0
        assert pms_lambda2(OscillatorParams(1.0, 0.0, 1.0)) == 0.0

    def test_negative_for_softening(self):
        assert pms_lambda2(OscillatorParams(1.0, -1.0, 0.5)) == -0.1875

    def test_stationarity_of_order3_sum(self):
        # central finite difference of Omega^2(lambda^2) at the returned point
        for p in (P111,
                  OscillatorParams(omega=1.0, mu=1.0, amplitude=2.0),
                  OscillatorParams(omega=1.3, mu=0.4, amplitude=1.1)):
            lam2 = pms_lambda2(p)
            h = 1e-5 * (p.omega ** 2 + lam2)
            plus = sum(alpha_coefficients(p, lam2 + h))
            minus = sum(alpha_coefficients(p, lam2 - h))
            deriv = (plus - minus) / (2.0 * h)
            om2 = omega2(p, "lplde").omega2
            assert abs(deriv) <= 1e-6 * om2


class TestOmega2:
    def test_lp3_printed_value(self):
        result = omega2(P111, "lp3")
        assert result.omega2 == 1.744140625
        assert result.method == "lp3"
        assert result.lambda2_used == 0.0

    def test_lp_partial_sums_nest(self):
        alphas = alpha_coefficients(P111, 0.0)
        assert omega2(P111, "lp1").omega2 == alphas[0] + alphas[1]
        assert omega2(P111, "lp2").omega2 == sum(alphas[:3])

    def test_lplde_printed_value(self):
        result = omega2(P111, "lplde")
        assert result.omega2 == 389.0 / 224.0
        assert result.lambda2_used == 0.75
        assert result.diagnostics["pms_clamped"] == 0.0

    def test_lplde_reduces_to_omega_for_linear_oscillator(self):
        p = OscillatorParams(omega=1.0, mu=0.0, amplitude=1.0)
        assert omega2(p, "lplde").omega2 == 1.0

    def test_lplde_matches_hand_simplified_closed_form(self):
        for amp in (0.5, 1.0, 2.0, 5.0):
            p = OscillatorParams(omega=1.0, mu=1.0, amplitude=amp)
            assert omega2(p, "lplde").omega2 == pytest.approx(
                oracles.lplde_omega2_simplified(1.0, 1.0, amp), rel=1e-15)

    def test_lplde_clamps_negative_stationary_point(self):
        p = OscillatorParams(omega=1.0, mu=-1.0, amplitude=0.5)
        result = omega2(p, "lplde")
        assert result.lambda2_used == 0.0
        assert result.diagnostics["pms_clamped"] == 1.0
        # with lambda clamped to zero LPLDE degenerates to the plain order-3 sum
        assert result.omega2 == omega2(p, "lp3").omega2

    def test_period_property(self):
        result = omega2(P111, "lplde")
        assert result.period == pytest.approx(
            2.0 * math.pi / math.sqrt(389.0 / 224.0), rel=1e-15)

    def test_unknown_method_rejected(self):
        with pytest.raises(DomainError):
            omega2(P111, "lp4")


class TestClosedFormVariants:
    def test_substitution_variant_matches_lplde(self):
        for amp in (0.5, 1.0, 2.0, 3.0, 5.0, 10.0):
            p = OscillatorParams(omega=1.0, mu=1.0, amplitude=amp)
            assert omega2_closed_form(p, "substitution") == pytest.approx(
                omega2(p, "lplde").omega2, rel=1e-14)

    def test_variants_disagree(self):
        assert omega2_closed_form(P111, "substitution") == pytest.approx(
            389.0 / 224.0, rel=1e-15)
        assert omega2_closed_form(P111, "legacy") == pytest.approx(
            384.0 / 224.0, rel=1e-15)

    def test_unknown_variant_rejected(self):
        with pytest.raises(DomainError):
            omega2_closed_form(P111, "other")


class TestTrajectory:
    def test_order1_coefficients_at_lambda_zero(self):
        exp = trajectory(P111, 0.0, order=1)
        assert exp.orders[1].coeffs == (-1.0 / 32.0, 1.0 / 32.0)

    def test_order2_coefficients_at_lambda_zero(self):
        exp = trajectory(P111, 0.0, order=2)
        x2 = exp.orders[2].coeffs
        assert x2 == pytest.approx(
            (23.0 / 1024.0, -3.0 / 128.0, 1.0 / 1024.0), rel=1e-15)
        assert math.fsum(x2) == pytest.approx(0.0, abs=1e-18)

    def test_boundary_conditions_randomized(self):
        rng = random.Random(20240817)
        for _ in range(20):
            p = OscillatorParams(omega=rng.uniform(0.5, 2.0),
                                 mu=rng.uniform(0.05, 3.0),
                                 amplitude=rng.uniform(0.2, 2.5))
            lam2 = rng.uniform(0.0, 2.0)
            exp = trajectory(p, lam2, order=3)
            scale = max(abs(c) for s in exp.orders for c in s.coeffs)
            for k in (1, 2, 3):
                assert abs(exp.orders[k].value(0.0)) <= 1e-13 * scale
            for k in (0, 1, 2, 3):
                # derivative of a pure cosine series vanishes at tau = 0
                assert exp.orders[k].deriv(0.0) == 0.0

    def test_alpha_head_of_expansion(self):
        exp = trajectory(P111, 0.3, order=3)
        assert exp.alphas[0] == 1.3
        assert exp.lambda2 == 0.3

    def test_invalid_order_rejected(self):
        with pytest.raises(DomainError):
            trajectory(P111, 0.0, order=4)

    def test_ode_residual_scales_with_next_order(self):
        # substituting the truncated order-3 series and its frequency back
        # into the equation of motion must leave only order-4 leftovers;
        # at A = 0.1 those sit far below 1e-8.
        p = OscillatorParams(omega=1.0, mu=1.0, amplitude=0.1)
        tau = np.linspace(0.0, 2.0 * math.pi, 1024)
        for lam2 in (0.0, pms_lambda2(p)):
            exp = trajectory(p, lam2, order=3)
            om2 = sum(exp.alphas)
            x = np.zeros_like(tau)
            xdd = np.zeros_like(tau)
            for series in exp.orders:
                for j, c in enumerate(series.coeffs):
                    k = 2 * j + 1
                    x += c * np.cos(k * tau)
                    xdd -= c * k * k * np.cos(k * tau)
            resid = om2 * xdd + p.omega ** 2 * x + p.mu * x ** 3
            assert float(np.max(np.abs(resid))) <= 1e-8


class TestEvaluate:
    def test_order0_at_zero(self):
        exp = trajectory(P111, 0.0, order=0)
        assert evaluate(exp, 1.0, 0.0) == 1.0

    def test_order0_half_period(self):
        exp = trajectory(P111, 0.0, order=0)
        assert evaluate(exp, 4.0, math.pi / 2.0) == pytest.approx(-1.0, rel=1e-15)

    def test_order3_at_zero_is_exactly_amplitude(self):
        result = omega2(P111, "lplde")
        exp = trajectory(P111, result.lambda2_used, order=3)
        assert evaluate(exp, result.omega2, 0.0) == 1.0

    def test_rejects_nonpositive_omega2(self):
        exp = trajectory(P111, 0.0, order=0)
        with pytest.raises(DomainError):
            evaluate(exp, 0.0, 1.0)


class TestRescaling:
    def test_invariance_pairs(self):
        # A^2 mu is preserved, so the optimized frequency must agree
        cases = [
            (OscillatorParams(1.0, 1.0, 1.0), 4.0),
            (OscillatorParams(1.0, 2.0, 1.0), 2.0),
            (OscillatorParams(2.0, 0.5, 2.0), 2.0),
        ]
        for params, mu_prime in cases:
            first, second = rescaling_check(params, mu_prime)
            assert second.omega2 == pytest.approx(first.omega2, rel=1e-14)

    def test_known_pair_hits_printed_value(self):
        first, second = rescaling_check(P111, 4.0)
        assert first.omega2 == 389.0 / 224.0
        assert second.omega2 == pytest.approx(389.0 / 224.0, rel=1e-14)

    def test_zero_mu_prime_rejected(self):
        with pytest.raises(DomainError):
            rescaling_check(P111, 0.0)

    def test_sign_flip_rejected(self):
        with pytest.raises(DomainError):
            rescaling_check(P111, -1.0)


class TestArgminConsistency:
    def test_error_minimum_sits_at_stationary_lambda(self):
        # scanning |order-3 Omega^2(lambda^2) - exact| over a uniform grid
        # must bottom out within one cell of lambda^2 = 3 A^2 mu / 4
        for amp in (0.5, 1.0, 2.0):
            p = OscillatorParams(omega=1.0, mu=1.0, amplitude=amp)
            exact = (2.0 * math.pi / duffing_exact_period(p)) ** 2
            top = 3.0 * amp * amp * 1.0
            grid = [top * i / 60.0 for i in range(61)]
            errors = [abs(sum(alpha_coefficients(p, lam2)) - exact)
                      for lam2 in grid]
            argmin = errors.index(min(errors))
            stationary_idx = 15  # lambda^2 = (3 A^2 mu / 4) = top / 4
            assert abs(argmin - stationary_idx) <= 1
