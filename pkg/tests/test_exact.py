"""Exact arithmetic: pi-polynomials, half-integer gamma, series coefficients."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypvol.exact import (
    PiPoly,
    TrigExpPoly,
    _cplx,
    bernoulli_numbers,
    gamma_half,
    gamma_half_ratio,
    poly_integral_01,
    poly_mul,
    poly_pow,
    zeta_even_over_pi_power,
)

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=50)
pi_polys = st.dictionaries(st.integers(-3, 4), rationals, max_size=4).map(PiPoly)


class TestPiPoly:
    def test_render_examples(self):
        assert PiPoly({1: Fraction(43, 60)}).render() == "43/60*pi"
        assert PiPoly({2: Fraction(943, 942480)}).render() == "943/942480*pi^2"
        assert PiPoly({1: 1, -1: Fraction(-128, 15)}).render() == "pi - 128/15*pi^-1"
        assert PiPoly({}).render() == "0"
        assert PiPoly({0: Fraction(-3, 2), 2: Fraction(4, 3)}).render() == "4/3*pi^2 - 3/2"

    def test_evaluate(self):
        val = PiPoly({1: 1, -1: Fraction(-128, 15)}).evaluate()
        assert val == pytest.approx(math.pi - 128 / (15 * math.pi), rel=1e-15)

    @given(pi_polys, pi_polys)
    def test_ring_axioms(self, p, q):
        assert (p + q).evaluate() == pytest.approx(p.evaluate() + q.evaluate(), rel=1e-12, abs=1e-9)
        assert p + q == q + p
        assert p * q == q * p
        assert (p - p) == PiPoly()

    @given(pi_polys, st.integers(-2, 3))
    def test_shift_matches_pi_power(self, p, k):
        assert p.shift(k).evaluate() == pytest.approx(p.evaluate() * math.pi**k, rel=1e-12, abs=1e-9)


class TestGammaHalf:
    def test_integer_arguments(self):
        assert gamma_half(2) == (Fraction(1), 0)  # Gamma(1)
        assert gamma_half(8) == (Fraction(6), 0)  # Gamma(4) = 3!

    def test_half_integer_arguments(self):
        # Gamma(1/2) = sqrt(pi), Gamma(5/2) = 3 sqrt(pi) / 4
        assert gamma_half(1) == (Fraction(1), 1)
        assert gamma_half(5) == (Fraction(3, 4), 1)

    @given(st.integers(1, 40))
    def test_matches_float_gamma(self, two_x):
        r, s = gamma_half(two_x)
        want = math.gamma(two_x / 2.0)
        assert float(r) * math.pi ** (0.5 * s) == pytest.approx(want, rel=1e-12)

    def test_ratio(self):
        r, s = gamma_half_ratio(4, 3)  # Gamma(2)/Gamma(3/2)
        assert float(r) * math.pi ** (0.5 * s) == pytest.approx(1.0 / math.gamma(1.5), rel=1e-14)


class TestPolynomials:
    def test_mul_and_pow(self):
        p = [Fraction(1), Fraction(1)]  # 1 + t
        assert poly_pow(p, 2) == [Fraction(1), Fraction(2), Fraction(1)]
        assert poly_mul(p, [Fraction(2)]) == [Fraction(2), Fraction(2)]

    def test_integral(self):
        # integral of t * (1 + t) over (0, 1) = 1/2 + 1/3
        assert poly_integral_01([Fraction(1), Fraction(1)], extra_power=1) == Fraction(5, 6)


class TestSeriesCoefficients:
    def test_bernoulli(self):
        bern = bernoulli_numbers(9)
        assert bern[0] == 1 and bern[1] == Fraction(-1, 2)
        assert bern[2] == Fraction(1, 6) and bern[4] == Fraction(-1, 30)
        assert bern[6] == Fraction(1, 42) and bern[8] == Fraction(-1, 30)
        assert bern[3] == bern[5] == bern[7] == 0

    def test_zeta_even(self):
        vals = zeta_even_over_pi_power(3)
        assert vals[0] == Fraction(1, 6)  # zeta(2)/pi^2
        assert vals[1] == Fraction(1, 90)
        assert vals[2] == Fraction(1, 945)


class TestTrigExpPoly:
    def _numeric(self, poly: TrigExpPoly) -> complex:
        xs = np.linspace(-math.pi / 2, math.pi / 2, 200001)
        total = 0.0 + 0.0j
        for (j, m), (re, im) in poly.terms.items():
            c = complex(re.evaluate(), im.evaluate())
            vals = xs**j * np.exp(1j * m * xs)
            total += c * np.trapezoid(vals, xs)
        return total

    def test_single_terms_against_trapezoid(self):
        from hypvol.exact import _term_integral

        for j, m in [(0, 0), (2, 0), (1, 1), (0, 3), (2, -2), (3, 1)]:
            re, im = _term_integral(j, m)
            want = self._numeric(TrigExpPoly({(j, m): _cplx(1)}))
            assert re.evaluate() == pytest.approx(want.real, abs=5e-9)
            assert im.evaluate() == pytest.approx(want.imag, abs=5e-9)

    def test_product_integration(self):
        # cos(x)**2 = ((e^ix + e^-ix)/2)^2 integrates to pi/2
        cos_x = TrigExpPoly({(0, 1): _cplx(Fraction(1, 2)), (0, -1): _cplx(Fraction(1, 2))})
        got = (cos_x * cos_x).integrate_sym_half_pi()
        assert got == PiPoly({1: Fraction(1, 2)})
