"""Airy evaluator accuracy against closed forms, the ODE, an independent
ODE-integrated oracle, and the scipy implementation."""

import numpy as np
import pytest
import scipy.integrate as si
import scipy.special

from betahermite import airy_ai, airy_ai_prime, airy_tail, edge_density_closed
from betahermite.airy import (
    AI0,
    AIP0,
    AiryAccuracyWarning,
    _asymptotic_neg,
    _asymptotic_pos,
    _series,
    ai_derivatives,
)

AI1_AT_0 = 0.1853301684089364   # AIP0^2 + AI0/3
AI2_AT_0 = 0.0669874837796640   # AIP0^2
AI4_AT_0 = 0.0078161414650278   # AIP0^2 - AI0/6


class TestPointValues:
    def test_at_zero(self):
        assert airy_ai(0.0) == pytest.approx(AI0, abs=1e-15)
        assert airy_ai_prime(0.0) == pytest.approx(AIP0, abs=1e-15)

    def test_against_scipy_band(self):
        x = np.linspace(-10, 10, 2001)
        ai, aip, _, _ = scipy.special.airy(x)
        assert np.max(np.abs(airy_ai(x) - ai)) <= 1e-12
        assert np.max(np.abs(airy_ai_prime(x) - aip)) <= 1e-12

    def test_against_scipy_positive_far(self):
        x = np.linspace(10, 100, 500)
        ai, aip, _, _ = scipy.special.airy(x)
        assert np.max(np.abs(airy_ai(x) / ai - 1.0)) <= 1e-10
        assert np.max(np.abs(airy_ai_prime(x) / aip - 1.0)) <= 1e-10

    def test_against_scipy_negative_far(self):
        x = np.linspace(-100, -10, 500)
        ai, _, _, _ = scipy.special.airy(x)
        envelope = np.abs(x) ** (-0.25)
        assert np.max(np.abs(airy_ai(x) - ai) / envelope) <= 1e-12

    def test_accuracy_warning(self):
        with pytest.warns(AiryAccuracyWarning):
            airy_ai(-250.0)


class TestOde:
    def test_residual_five_point(self):
        # |Ai'' - x Ai| <= 1e-8 with a 4th-order central stencil; h balances
        # h^4 truncation against evaluator noise amplified by 1/h^2
        h = 0.004
        xs = np.arange(-10.0, 10.0 + 1e-9, 0.25)
        worst = 0.0
        for x in xs:
            f = airy_ai(np.array([x - 2 * h, x - h, x, x + h, x + 2 * h]))
            second = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
            worst = max(worst, abs(second - x * f[2]))
        assert worst <= 1e-8

    def test_derivative_consistency(self):
        h = 1e-5
        xs = np.arange(-8.0, 6.0, 0.5)
        fd = (airy_ai(xs + h) - airy_ai(xs - h)) / (2 * h)
        assert np.max(np.abs(fd - airy_ai_prime(xs))) <= 1e-7

    def test_differentiated_ode_residual(self):
        # Ai''' = Ai + x Ai', via the stencil applied to Ai'
        h = 0.004
        xs = np.arange(-10.0, 10.0 + 1e-9, 0.5)
        worst = 0.0
        for x in xs:
            g = airy_ai_prime(np.array([x - 2 * h, x - h, x, x + h, x + 2 * h]))
            second = (-g[0] + 16 * g[1] - 30 * g[2] + 16 * g[3] - g[4]) / (12 * h * h)
            worst = max(worst, abs(second - airy_ai(x) - x * g[2]))
        assert worst <= 1e-8

    def test_first_zero_against_ode_oracle(self):
        # bisect our own evaluator, then confirm with an independent
        # high-accuracy integration of y'' = x y from the exact origin values
        lo, hi = -2.5, -2.2
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if airy_ai(mid) * airy_ai(lo) <= 0:
                hi = mid
            else:
                lo = mid
        root = 0.5 * (lo + hi)
        assert abs(airy_ai(root)) <= 1e-8
        sol = si.solve_ivp(
            lambda t, y: [y[1], t * y[0]],
            (0.0, root),
            [AI0, AIP0],
            rtol=1e-12,
            atol=1e-14,
            dense_output=True,
        )
        assert abs(sol.y[0, -1]) <= 1e-8
        assert root == pytest.approx(-2.3381074104597674, abs=1e-9)


class TestBranchConsistency:
    def test_overlap_positive(self):
        xs = np.linspace(5.0, 10.0, 101)
        a_ser, ap_ser = _series(xs)
        a_asy, ap_asy = _asymptotic_pos(xs)
        assert np.max(np.abs(a_ser - a_asy)) <= 1e-8
        assert np.max(np.abs(ap_ser - ap_asy)) <= 1e-8

    def test_overlap_negative(self):
        xs = np.linspace(-10.0, -5.0, 101)
        a_ser, ap_ser = _series(xs)
        a_asy, ap_asy = _asymptotic_neg(xs)
        assert np.max(np.abs(a_ser - a_asy)) <= 2e-8
        assert np.max(np.abs(ap_ser - ap_asy)) <= 2e-7

    def test_overlap_tight_near_switch(self):
        # both branches are far inside their comfort zones around the +6.2
        # crossover, so they must agree to near round-off there
        xs = np.linspace(5.5, 7.5, 51)
        a_ser, _ = _series(xs)
        a_asy, _ = _asymptotic_pos(xs)
        assert np.max(np.abs(a_ser - a_asy)) <= 2e-13


class TestTail:
    def test_at_zero(self):
        # quadrature oracle agrees with the 1/3 identity
        oracle = si.quad(lambda t: scipy.special.airy(t)[0], 0, 30, limit=300)[0]
        assert oracle == pytest.approx(1.0 / 3.0, abs=1e-10)
        assert airy_tail(0.0) == pytest.approx(1.0 / 3.0, abs=1e-9)

    def test_far_right(self):
        assert airy_tail(50.0) <= 1e-15

    def test_far_left(self):
        v = airy_tail(-50.0)
        oracle = si.quad(
            lambda t: scipy.special.airy(t)[0], -50, 30, limit=2000
        )[0]
        assert abs(v - 1.0) <= 0.05
        assert v == pytest.approx(oracle, abs=1e-8)

    def test_mid_values_against_quad(self):
        for x in (-5.0, -1.0, 1.0, 4.0):
            oracle = si.quad(lambda t: scipy.special.airy(t)[0], x, 30, limit=500)[0]
            assert airy_tail(x) == pytest.approx(oracle, abs=1e-10)


class TestEdgeDensityClosed:
    def test_beta2_at_zero(self):
        assert edge_density_closed(2, 0.0).value == pytest.approx(AI2_AT_0, abs=1e-12)

    def test_beta1_at_zero(self):
        assert edge_density_closed(1, 0.0).value == pytest.approx(AI1_AT_0, abs=1e-9)

    def test_beta4_at_zero(self):
        assert edge_density_closed(4, 0.0).value == pytest.approx(AI4_AT_0, abs=1e-9)

    def test_unsupported_beta(self):
        with pytest.raises(ValueError, match="kontsevich"):
            edge_density_closed(6, 0.0)

    @pytest.mark.parametrize("beta", [1, 2, 4])
    def test_nonnegative(self, beta):
        xs = np.arange(-10.0, 5.0, 0.1)
        v = edge_density_closed(beta, xs).value
        assert np.min(v) >= -1e-12

    def test_beta2_decay(self):
        xs = np.arange(1.0, 8.0, 0.25)
        v = edge_density_closed(2, xs).value
        assert np.all(np.diff(v) < 0)

    def test_beta2_semicircle_asymptote(self):
        # Ai_2(x) ~ sqrt(-x)/pi toward the bulk
        x = -30.0
        ratio = edge_density_closed(2, x).value / (np.sqrt(-x) / np.pi)
        assert abs(ratio - 1.0) <= 0.05


def test_ai_derivatives_recurrence():
    x = 0.7
    d = ai_derivatives(x, 6)
    ai, aip, _, _ = scipy.special.airy(x)
    assert d[0] == pytest.approx(ai, abs=1e-13)
    assert d[1] == pytest.approx(aip, abs=1e-13)
    assert d[2] == pytest.approx(x * ai, abs=1e-13)
    assert d[3] == pytest.approx(ai + x * aip, abs=1e-13)
    # 4th: (x Ai)'' = 2 Ai' + x Ai'' = 2 Ai' + x^2 Ai
    assert d[4] == pytest.approx(2 * aip + x * x * ai, abs=1e-12)
