"""Entry moments: Monte Carlo against closed forms, the finite-N ratio, and
the sphere-sampling validity guard at n=2."""

from math import log, sqrt

import mpmath
import numpy as np
import pytest
import scipy.integrate as si

from betahermite import (
    EnsembleKind,
    EnsembleParams,
    MomentIndex,
    SampleSeed,
    big_l,
    moment_mc,
    moment_ratio_exact,
    verify_moment_equivalence,
)


class TestMomentIndex:
    def test_total_degree(self):
        idx = MomentIndex((2, 0, 1), (0, 3))
        assert idx.s == 6 and idx.n == 3

    def test_single_constructors(self):
        a = MomentIndex.single_a(4, 2, 3)
        assert a.eta_a == (0, 3, 0, 0) and a.s == 3
        b = MomentIndex.single_b(4, 1, 2)
        assert b.eta_b == (2, 0, 0) and b.s == 2

    def test_validation(self):
        with pytest.raises(ValueError):
            MomentIndex((1, -1), (0,))
        with pytest.raises(ValueError):
            MomentIndex((1, 1), (0, 0))


class TestMomentMc:
    def test_zero_index_is_exactly_one(self):
        m = moment_mc(EnsembleParams(3, 2.0), MomentIndex((0, 0, 0), (0, 0)),
                      1000, SampleSeed(0))
        assert m.mean == 1.0 and m.std_error == 0.0

    def test_gaussian_a1_squared(self):
        m = moment_mc(EnsembleParams(5, 2.0), MomentIndex.single_a(5, 1, 2),
                      20_000, SampleSeed(1))
        assert abs(m.mean - 1.0) <= 3.0 * m.std_error

    def test_gaussian_b1_squared_beta2(self):
        # bottom entry: E[b_1^2] = 1*beta/2 = 1
        m = moment_mc(EnsembleParams(5, 2.0), MomentIndex.single_b(5, 1, 2),
                      20_000, SampleSeed(2))
        assert abs(m.mean - 1.0) <= 3.0 * m.std_error

    def test_b_indexing_is_bottom_up(self):
        # top entry j = n-1 = 4: E[b_4^2] = 4*beta/2 = 4 at beta=2
        m = moment_mc(EnsembleParams(5, 2.0), MomentIndex.single_b(5, 4, 2),
                      20_000, SampleSeed(3))
        assert abs(m.mean - 4.0) <= 3.0 * m.std_error

    def test_odd_moment_flagged(self):
        m = moment_mc(EnsembleParams(3, 1.0), MomentIndex.single_a(3, 1, 1),
                      500, SampleSeed(4))
        assert m.sign_symmetric

    def test_reps_floor(self):
        with pytest.raises(ValueError):
            moment_mc(EnsembleParams(3, 1.0), MomentIndex.single_a(3, 1, 2),
                      50, SampleSeed(0))


class TestExactRatio:
    def test_s0(self):
        assert moment_ratio_exact(7, 1.3, 0) == 1.0

    def test_small_case(self):
        # L = 2 at n = 2, beta = 2: ratio(s=2) = 2 G(3)/G(4) = 2/3
        assert moment_ratio_exact(2, 2.0, 2) == pytest.approx(2.0 / 3.0, rel=1e-14)

    def test_n100_beta2_s4(self):
        L = big_l(100, 2.0)
        target = L * L / ((L + 1) * (L + 2))
        assert moment_ratio_exact(100, 2.0, 4) == pytest.approx(target, rel=1e-11)
        assert moment_ratio_exact(100, 2.0, 4) == pytest.approx(0.999400279880, abs=1e-9)

    def test_monotone_to_unity(self):
        for s in (2, 4, 6):
            vals = [moment_ratio_exact(n, 2.0, s) for n in (10, 40, 160, 640)]
            assert np.all(np.diff(vals) > 0) and vals[-1] < 1.0

    def test_odd_s_rejected(self):
        with pytest.raises(ValueError):
            moment_ratio_exact(5, 2.0, 3)

    def test_stirling_slope(self):
        # log ratio ~ -s(s+2)/(8L); confirmed in high precision before use
        mpmath.mp.dps = 40
        for s in (2, 4):
            for n in (200, 800):
                L = mpmath.mpf(big_l(n, 2.0))
                lr = (s / 2) * mpmath.log(L) + mpmath.loggamma(L + 1) - mpmath.loggamma(L + s / 2 + 1)
                predicted = -s * (s + 2) / (8 * L)
                assert abs(float(lr - predicted)) <= float(s**3 / L**2)
        lr64 = log(moment_ratio_exact(800, 2.0, 4))
        assert lr64 == pytest.approx(-4 * 6 / (8 * big_l(800, 2.0)), rel=1e-2)


def fixed_trace_a1_sq_quadrature(beta: float) -> float:
    """E[a_1^2] on the n=2 sphere tr H^2 = 2L by direct quadrature.

    Eliminating b >= 0 from the constraint a1^2 + a2^2 + 2 b^2 = r^2 leaves
    the marginal weight b^(beta-2) ~ (r^2 - a1^2 - a2^2)^((beta-2)/2); the
    chi-weight power beta-1 and the constraint Jacobian 1/b combine to
    beta-2.
    """
    r2 = 2.0 * big_l(2, beta)
    q = (beta - 2.0) / 2.0

    def num(rho):
        return rho**3 / 2.0 * (r2 - rho * rho) ** q

    def den(rho):
        return rho * (r2 - rho * rho) ** q

    top = si.quad(num, 0, sqrt(r2), limit=300)[0]
    bot = si.quad(den, 0, sqrt(r2), limit=300)[0]
    return top / bot


class TestSphereSamplingGuard:
    @pytest.mark.parametrize("beta", [1.0, 2.0, 4.0])
    def test_mc_matches_constraint_quadrature(self, beta):
        # the designated validity check for rescale-to-sphere sampling
        quad = fixed_trace_a1_sq_quadrature(beta)
        p = EnsembleParams(2, beta, EnsembleKind.FIXED_TRACE)
        m = moment_mc(p, MomentIndex.single_a(2, 1, 2), 40_000, SampleSeed(11))
        assert abs(m.mean - quad) <= 3.0 * m.std_error

    def test_quadrature_closed_form(self):
        # the reduced integral evaluates to r^2/(beta+2)
        for beta in (1.0, 2.0, 4.0, 6.5):
            r2 = 2.0 * big_l(2, beta)
            assert fixed_trace_a1_sq_quadrature(beta) == pytest.approx(
                r2 / (beta + 2.0), rel=1e-9
            )


class TestEquivalence:
    def test_n10_beta2_within_3_sigma(self):
        rep = verify_moment_equivalence(
            EnsembleParams(10, 2.0), MomentIndex.single_a(10, 1, 2),
            10_000, SampleSeed(21),
        )
        assert rep.within_3_sigma
        assert rep.exact_ratio == pytest.approx(moment_ratio_exact(10, 2.0, 2))

    def test_skips_odd_moment(self):
        rep = verify_moment_equivalence(
            EnsembleParams(6, 2.0), MomentIndex.single_a(6, 1, 1),
            1000, SampleSeed(22),
        )
        assert rep.skipped is not None and rep.within_3_sigma is None

    def test_trace_moment(self):
        # <tr H^2> = 2L for the Gaussian sampler
        from betahermite import sample_beta_hermite

        n, beta = 20, 1.0
        p = EnsembleParams(n, beta)
        vals = np.array(
            [sample_beta_hermite(p, SampleSeed(23, r)).trace_sq() for r in range(5000)]
        )
        se = vals.std(ddof=1) / sqrt(len(vals))
        assert abs(vals.mean() - 2.0 * big_l(n, beta)) <= 3.0 * se
