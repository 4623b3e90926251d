"""Scalar special functions against independent oracles.

The gamma routines are checked against the C library's lgamma, the
incomplete beta against mpmath, the segment primitives against direct
substituted quadrature, and the log-sine integral against both its
defining integral and frozen high-precision digits.
"""

import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hypvol import quad, specfun

CFG = quad.QuadConfig()

# frozen via mpmath (clsin) and confirmed by direct quadrature below
LOBACHEVSKY_PI_3 = 0.33831386880321788
REGULAR_IDEAL_TETRA = 1.0149416064096536


def quad_f_beta(beta: float, x: float) -> float:
    """Quadrature oracle for the segment primitive, singularity moved to 0."""
    pio2_hi, pio2_lo = 1.5707963267948966, 6.123233995736766e-17
    if x <= 0.0:
        upper = (pio2_hi + x) + pio2_lo
        if upper <= 0.0:
            return 0.0
        return quad.integrate_finite(lambda t: np.sin(t) ** beta, 0.0, upper, CFG).value
    head = quad.integrate_finite(lambda t: np.sin(t) ** beta, 0.0, 0.5 * math.pi, CFG).value
    w = (pio2_hi - x) + pio2_lo
    if w <= 0.0:
        return 2.0 * head
    return 2.0 * head - quad.integrate_finite(lambda t: np.sin(t) ** beta, 0.0, w, CFG).value


class TestLogGamma:
    def test_exact_points(self):
        assert specfun.log_gamma(1.0) == pytest.approx(0.0, abs=1e-15)
        assert specfun.log_gamma(0.5) == pytest.approx(math.log(math.sqrt(math.pi)), rel=1e-15)
        assert specfun.log_gamma(10.0) == pytest.approx(math.log(362880.0), rel=1e-15)

    def test_domain(self):
        with pytest.raises(ValueError):
            specfun.log_gamma(0.0)
        with pytest.raises(ValueError):
            specfun.log_gamma(-2.5)

    @given(st.floats(min_value=1e-3, max_value=170.0))
    def test_against_libm(self, x):
        want = math.lgamma(x)
        assert specfun.log_gamma(x) == pytest.approx(want, rel=1e-14, abs=1e-14)

    def test_gamma_real_reflection(self):
        assert specfun.gamma_real(-0.5) == pytest.approx(math.gamma(-0.5), rel=1e-13)
        assert specfun.gamma_real(-2.3) == pytest.approx(math.gamma(-2.3), rel=1e-13)
        with pytest.raises(ValueError):
            specfun.gamma_real(-3.0)


class TestNormalizingConstants:
    def test_c_one_dim_values(self):
        assert specfun.c_one_dim(0.0) == pytest.approx(0.5, rel=1e-14)
        assert specfun.c_one_dim(-0.5) == pytest.approx(1.0 / math.pi, rel=1e-14)
        assert specfun.c_one_dim(0.5) == pytest.approx(2.0 / math.pi, rel=1e-14)

    def test_c_d_beta_values(self):
        assert specfun.c_d_beta(2, 0.0) == pytest.approx(1.0 / math.pi, rel=1e-14)
        assert specfun.c_d_beta(3, 0.0) == pytest.approx(3.0 / (4.0 * math.pi), rel=1e-14)
        for beta in (-0.5, 0.0, 1.7):
            assert specfun.c_d_beta(1, beta) == pytest.approx(specfun.c_one_dim(beta), rel=1e-14)

    def test_domain(self):
        with pytest.raises(ValueError):
            specfun.c_one_dim(-1.0)
        with pytest.raises(ValueError):
            specfun.c_d_beta(0, 0.0)


class TestIncBeta:
    def test_complete_and_zero(self):
        for p, q in [(2.0, 3.0), (0.5, 0.5), (0.05, 4.0)]:
            want = math.exp(specfun.log_gamma(p) + specfun.log_gamma(q) - specfun.log_gamma(p + q))
            assert specfun.inc_beta(1.0, p, q) == pytest.approx(want, rel=1e-12)
            assert specfun.inc_beta(0.0, p, q) == 0.0

    def test_symmetry_at_half(self):
        for p in (0.3, 1.0, 2.5):
            want = 0.5 * math.exp(2 * specfun.log_gamma(p) - specfun.log_gamma(2 * p))
            assert specfun.inc_beta(0.5, p, p) == pytest.approx(want, rel=1e-12)

    def test_against_mpmath(self):
        mp.mp.dps = 30
        rng = np.random.default_rng(123)
        for _ in range(60):
            p = float(rng.uniform(0.03, 8.0))
            q = float(rng.uniform(0.03, 8.0))
            z = float(rng.uniform(0.0, 1.0))
            want = float(mp.betainc(p, q, 0, z))
            assert specfun.inc_beta(z, p, q) == pytest.approx(want, rel=1e-12, abs=1e-300)

    def test_vectorized(self):
        z = np.array([0.1, 0.5, 0.9])
        out = specfun.inc_beta(z, 2.0, 2.0)
        assert out.shape == (3,)
        assert out[1] == pytest.approx(specfun.inc_beta(0.5, 2.0, 2.0))

    def test_domain(self):
        with pytest.raises(ValueError):
            specfun.inc_beta(1.5, 1.0, 1.0)
        with pytest.raises(ValueError):
            specfun.inc_beta(0.5, -1.0, 1.0)


class TestFReal:
    def test_endpoint_identity(self):
        for beta in (-0.9, -0.5, 0.0, 1.0, 2.7, 10.0):
            want = 1.0 / specfun.c_one_dim(0.5 * (beta - 1.0))
            assert specfun.f_real(beta, math.pi / 2) == pytest.approx(want, rel=1e-13)
            assert specfun.f_real(beta, 0.0) == pytest.approx(0.5 * want, rel=1e-13)
            assert specfun.f_real(beta, -math.pi / 2) == 0.0

    def test_linear_parameter(self):
        for x in np.linspace(-math.pi / 2, math.pi / 2, 31):
            assert specfun.f_real(1.0, float(x)) == pytest.approx(1.0 + math.sin(x), abs=1e-14)

    def test_against_quadrature(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            beta = float(rng.uniform(-0.95, 8.0))
            x = float(rng.uniform(-math.pi / 2, math.pi / 2))
            assert specfun.f_real(beta, x) == pytest.approx(quad_f_beta(beta, x), abs=1e-10)

    def test_domain(self):
        with pytest.raises(ValueError):
            specfun.f_real(-1.0, 0.0)
        with pytest.raises(ValueError):
            specfun.f_real(0.0, 2.0)


class TestFImag:
    def test_at_zero(self):
        for beta in (0.0, 1.0, 3.5):
            got = specfun.f_imag(beta, 0.0)
            assert got.imag == 0.0
            assert got.real == pytest.approx(0.5 / specfun.c_one_dim(0.5 * (beta - 1.0)), rel=1e-13)

    def test_linear_parameter(self):
        for x in (-2.0, -0.3, 0.0, 1.0, 3.0):
            got = specfun.f_imag(1.0, x)
            assert got == pytest.approx(complex(1.0, math.sinh(x)), rel=1e-12)

    def test_odd_parameter_identity(self):
        for m in (1, 2, 3, 4):
            for u in (-3.0, -1.0, 0.0, 0.5, 2.0):
                got = specfun.f_imag(2 * m - 1, u)
                theta = math.atan(math.sinh(u))
                bmm = math.factorial(m - 1) ** 2 / math.factorial(2 * m - 1)
                want = (
                    bmm
                    * complex(math.cos(theta), math.sin(theta))
                    / math.cos(theta) ** (2 * m - 1)
                    * specfun.p_m_poly(m, complex(math.cos(2 * theta), math.sin(2 * theta)))
                )
                assert abs(got - want) <= 1e-10 * (1.0 + abs(want))

    def test_domain(self):
        with pytest.raises(ValueError):
            specfun.f_imag(-0.5, 1.0)


class TestPmPoly:
    def test_small_cases(self):
        assert specfun.p_m_poly(1, 5.0) == 1
        assert specfun.p_m_poly(2, 2.0) == pytest.approx(3.0 + 2.0)

    @given(st.integers(1, 12))
    def test_row_sum(self, m):
        assert specfun.p_m_poly(m, 1.0) == 2 ** (2 * m - 2)

    def test_domain(self):
        with pytest.raises(ValueError):
            specfun.p_m_poly(0, 1.0)


class TestHarmonic:
    def test_values(self):
        assert specfun.harmonic(1) == 1
        assert specfun.harmonic(3) == Fraction(11, 6)
        assert specfun.harmonic(5) == Fraction(137, 60)

    @settings(max_examples=40)
    @given(st.integers(2, 1000))
    def test_difference(self, n):
        assert specfun.harmonic(n) - specfun.harmonic(n - 1) == Fraction(1, n)

    def test_domain(self):
        with pytest.raises(ValueError):
            specfun.harmonic(0)


class TestLobachevsky:
    def test_zeros(self):
        assert specfun.lobachevsky(0.0) == 0.0
        assert abs(specfun.lobachevsky(math.pi)) <= 1e-12
        assert abs(specfun.lobachevsky(math.pi / 2)) <= 1e-12

    def test_frozen_value(self):
        assert specfun.lobachevsky(math.pi / 3) == pytest.approx(LOBACHEVSKY_PI_3, abs=1e-13)

    def test_against_defining_integral(self):
        for theta in (0.2, 0.7, math.pi / 3, 1.4):
            ref = quad.integrate_finite(lambda t: -np.log(2.0 * np.sin(t)), 0.0, theta, CFG)
            assert specfun.lobachevsky(theta) == pytest.approx(ref.value, abs=1e-12)

    def test_symmetries(self):
        ts = np.linspace(-3.0, 3.0, 61)
        lob = specfun.lobachevsky
        assert np.abs(lob(ts) + lob(-ts)).max() <= 1e-12
        assert np.abs(lob(ts + math.pi) - lob(ts)).max() <= 1e-12
        assert np.abs(0.5 * lob(2 * ts) - lob(ts) - lob(ts + math.pi / 2)).max() <= 1e-10

    def test_maximum_location(self):
        # the maximum sits at pi/6
        ts = np.linspace(0.0, math.pi, 10001)
        vals = specfun.lobachevsky(ts)
        assert abs(ts[np.argmax(vals)] - math.pi / 6) < 1e-3


class TestCoshPowIntegral:
    def test_scaled_against_quadrature(self):
        for beta in (0.0, 1.0, 2.0, 3.7, 12.0):
            for x in (0.25, 1.0, 2.5, 10.0):
                direct = quad.integrate_finite(lambda y: np.cosh(y) ** beta, 0.0, x, CFG).value
                got = float(specfun.cosh_pow_integral_scaled(beta, x)[0]) * math.cosh(x) ** beta
                assert got == pytest.approx(direct, rel=1e-12)

    def test_odd_in_x(self):
        got = specfun.cosh_pow_integral_scaled(2.0, np.array([-1.5, 1.5]))
        assert got[0] == -got[1]

    def test_huge_argument_finite(self):
        out = specfun.cosh_pow_integral_scaled(4.0, np.array([1e3, 1e150]))
        assert np.isfinite(out).all()
