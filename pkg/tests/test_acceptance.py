"""Acceptance criteria, one test per criterion at its stated tolerance.

Each test prints a single pass line once its assertions hold, so a
verbose run reads as a checklist.  Runtime budgets are asserted for the
criteria that carry one.
"""

import math
import time
from fractions import Fraction

from hypvol import expect, mcsim
from hypvol.exact import PiPoly
from hypvol.expect import BetaSpec
from hypvol.mcsim import SampleConfig
from hypvol.quad import QuadConfig
from hypvol.specfun import harmonic

CFG = QuadConfig()


def _report(criterion: str, detail: str):
    print(f"[PASS] {criterion}: {detail}")


def test_criterion_01_ideal_polytopes_dimension3():
    budget = 5.0
    start = time.time()
    exact_values = {
        4: Fraction(1, 6), 5: Fraction(5, 12), 6: Fraction(43, 60),
        7: Fraction(21, 20), 8: Fraction(197, 140),
    }
    worst = 0.0
    for n, frac in exact_values.items():
        spec = BetaSpec(3, (-1.0,) * n)
        res = expect.expected_hyp_volume(spec, CFG)
        assert res.exact == PiPoly({1: frac})
        generic = expect.expected_hyp_volume(spec, CFG, method="generic", closed_forms=False)
        rel = abs(generic.value - res.value) / res.value
        worst = max(worst, rel)
        assert rel <= 1e-8
    elapsed = time.time() - start
    assert elapsed < budget
    _report("criterion-1", f"n=4..8 exact and quadrature paths agree (worst rel {worst:.1e}, {elapsed:.2f}s)")


def test_criterion_02_wz_identity():
    budget = 2.0
    start = time.time()
    for n in range(4, 201):
        assert expect.ideal_polytope3_via_sum(n) == PiPoly({1: Fraction(n, 2) - harmonic(n - 1)})
    elapsed = time.time() - start
    assert elapsed < budget
    _report("criterion-2", f"alternating sum equals n/2 - H_(n-1) exactly for 4 <= n <= 200 ({elapsed:.2f}s)")


def test_criterion_03_ideal_simplices():
    budget = 30.0
    start = time.time()
    assert expect.ideal_simplex_volume(3, CFG).exact == PiPoly({1: Fraction(1, 6)})
    assert expect.ideal_simplex_volume(5, CFG).exact == PiPoly({2: Fraction(943, 942480)})
    assert expect.ideal_simplex_volume(7, CFG).exact == PiPoly(
        {3: Fraction(6952469612009, 2292117595080112800)}
    )
    v2 = expect.ideal_simplex_volume(2, CFG).value
    assert abs(v2 - math.pi) <= 1e-9
    v4_exact = PiPoly({2: Fraction(4, 3), 0: Fraction(-86528, 6615)}).evaluate()
    v4 = expect.ideal_simplex_volume(4, CFG).value
    assert abs(v4 - v4_exact) / v4_exact <= 1e-7
    v6_exact = PiPoly(
        {
            3: Fraction(34, 15),
            1: Fraction(-1166172999537393664, 47992913336092725),
            -1: Fraction(7754705186848768, 407510816383125),
        }
    ).evaluate()
    v6 = expect.ideal_simplex_volume(6, CFG).value
    assert abs(v6 - v6_exact) / v6_exact <= 1e-7
    elapsed = time.time() - start
    assert elapsed < budget
    _report("criterion-3", f"odd exact, even quadrature within tolerance ({elapsed:.2f}s)")


def test_criterion_04_beta0_polygons():
    budget = 10.0
    start = time.time()
    expected = {
        3: PiPoly({1: 1, -1: Fraction(-128, 15)}),
        4: PiPoly({1: 2, -1: Fraction(-256, 15)}),
        5: PiPoly({1: 3, -1: Fraction(-128, 3), -3: Fraction(5537792, 33075)}),
        6: PiPoly({1: 4, -1: Fraction(-256, 3), -3: Fraction(5537792, 11025)}),
    }
    for n, want in expected.items():
        res = expect.polygon_beta0(n, CFG)
        assert res.exact == want
        assert abs(res.value - want.evaluate()) <= 1e-9
    elapsed = time.time() - start
    assert elapsed < budget
    _report("criterion-4", f"n=3..6 match the exact expressions ({elapsed:.2f}s)")


REP_GRID = [
    BetaSpec(2, (-1.0, -1.0, -1.0)),
    BetaSpec(2, (-1.0, -0.5, 0.0, 1.0)),
    BetaSpec(2, (0.0,) * 4),
    BetaSpec(2, (-0.5, -0.5, 1.0, 1.0, 1.0)),
    BetaSpec(3, (-1.0,) * 4),
    BetaSpec(3, (-1.0, -0.5, 0.0, 1.0)),
    BetaSpec(3, (0.0, 0.0, 0.0, 0.0, 1.0)),
    BetaSpec(3, (-1.0,) * 5),
    BetaSpec(4, (-1.0,) * 5),
    BetaSpec(4, (-1.0, -0.5, 0.0, 1.0, 1.0)),
    BetaSpec(4, (0.0,) * 6),
    BetaSpec(4, (-0.5,) * 7),
]


def test_criterion_05_representation_equality():
    budget = 60.0
    start = time.time()
    worst = 0.0
    for spec in REP_GRID:
        for beta in (0.0, -0.4, -0.5 * (spec.d + 1) + 0.1):
            up = expect.expected_beta_integral(spec, beta, CFG, representation="upper").value
            lo = expect.expected_beta_integral(spec, beta, CFG, representation="lower").value
            worst = max(worst, abs(up - lo))
    assert worst <= 1e-9
    elapsed = time.time() - start
    assert elapsed < budget
    _report("criterion-5", f"12-case grid, worst |upper-lower| = {worst:.2e} ({elapsed:.2f}s)")


def _richardson3(f, eps):
    i1, i2, i4 = f(eps), f(eps / 2), f(eps / 4)
    return (4 * (2 * i4 - i2) - (2 * i2 - i1)) / 3


def test_criterion_06_removable_singularities():
    cases = [
        (3, (-1.0,) * 4, 1),
        (4, (-1.0, -0.5, 0.0, 1.0, 0.0), 1),
        (5, (-1.0,) * 6, 1),
        (5, (0.0,) * 6, 2),
    ]
    worst = 0.0
    for d, betas, k in cases:
        spec = BetaSpec(d, betas)
        pole = expect.expected_beta_integral(spec, -float(k), CFG)
        assert pole.pole_path
        extrapolated = _richardson3(
            lambda e: expect.expected_beta_integral(spec, -float(k) + e, CFG).value, 1e-2
        )
        worst = max(worst, abs(pole.value - extrapolated))
    assert worst <= 1e-6
    _report("criterion-6", f"pole path vs Richardson, worst {worst:.2e}")


ABSORPTION_GRID = [
    (2, (-1.0, -1.0, -1.0), 0.0),
    (2, (-1.0, 0.0, 1.0, 2.0), -1.0),
    (2, (0.0,) * 5, 0.5),
    (3, (-1.0,) * 4, 0.0),
    (3, (-1.0, -0.5, 0.0, 1.0, 2.0), 0.5),
    (3, (-1.0,) * 6, 1.0),
    (4, (-1.0,) * 5, 0.0),
    (4, (-1.0, -1.0, 0.0, 0.0, 1.0, 1.0), -1.0),
    (5, (-1.0,) * 6, 0.0),
    (5, (0.0, 0.0, 0.0, -0.5, -0.5, 1.0, 2.0), 2.0),
]


def test_criterion_07_absorption_identity():
    from hypvol import abcore

    worst = 0.0
    for d, betas, beta in ABSORPTION_GRID:
        spec = BetaSpec(d, betas)
        terms = []
        for cards in (range(d + 1, spec.n + 1, 2), range(d - 1, -1, -2)):
            for cls in expect.enumerate_classes(spec, cards):
                theta = abcore.theta_fn(
                    beta + 0.5 * d, cls.inside.scaled(0.5), cls.outside.scaled(0.5), CFG
                )
                terms.append(cls.multiplicity * theta.value)
        worst = max(worst, abs(math.fsum(terms) - 0.5))
    assert worst <= 1e-9
    _report("criterion-7", f"theta sums total 1/2 on 10-case grid, worst deviation {worst:.2e}")


def test_criterion_08_monte_carlo_concordance():
    budget = 120.0
    start = time.time()
    zs = []
    for n in (4, 6):
        est = mcsim.mc_ideal_polytope3_volume(n, SampleConfig(seed=100 + n, n_samples=100000, streams=4))
        target = expect.ideal_polytope3(n).evaluate()
        z = (est.mean - target) / est.stderr
        zs.append(f"n={n}: z={z:+.2f}")
        assert abs(z) <= 3.0
    absorb_specs = [
        (BetaSpec(2, (0.0, 0.0, 0.0)), 200),
        (BetaSpec(3, (-1.0,) * 5), 201),
        (BetaSpec(3, (-1.0, 0.0, 1.0, 2.0)), 202),
    ]
    for spec, seed in absorb_specs:
        est = mcsim.mc_absorption(spec, 0.0, SampleConfig(seed=seed, n_samples=150000, streams=4))
        target = expect.expected_beta_integral(spec, 0.0, CFG).value
        z = (est.mean - target) / est.stderr
        zs.append(f"absorb d={spec.d}: z={z:+.2f}")
        assert abs(z) <= 3.0
    rng = mcsim._stream_rng(77, 0)
    pts = mcsim._sample_beta_batch(2, -1.0, rng, 500 * 6).reshape(500, 6, 2)
    for i in range(500):
        area = mcsim.hyp_area_polygon_d2(mcsim.hull_d2(pts[i]))
        assert abs(area - 4.0 * math.pi) <= 1e-9
    elapsed = time.time() - start
    assert elapsed < budget
    _report("criterion-8", f"{'; '.join(zs)}; 500 ideal d2 hulls exact ({elapsed:.1f}s)")


def test_criterion_09_special_function_suite():
    from hypvol import abcore

    P = abcore.ParamMultiset
    worst = 0.0
    # repeated-unit closed forms against raw quadrature
    for d, alpha in ((2, 3.5), (3, 5.0), (4, 6.0), (3, 4.2)):
        got = abcore.a_fn(alpha, P([1.0] * d), CFG, closed_forms=False).value
        worst = max(worst, abs(got - abcore.a_ones(d, alpha)))
    for d, alpha in ((1, 0.0), (2, 1.3), (3, 1.0), (4, 0.5)):
        got = abcore.b_fn(alpha, P([1.0] * d), CFG, closed_forms=False).value
        worst = max(worst, abs(got - abcore.b_ones(d, alpha)))
    # derivative at the vanishing point
    for k in (2, 4, 6):
        got = abcore.a_prime(k + 1.0, P([1.0] * k), CFG, closed_forms=False).value
        worst = max(worst, abs(got - abcore.a_prime_ones_at_pole(k)))
    # limit of (alpha + 1) b at the pole: equals the product of the full
    # inner integrals, each evaluated here by quadrature (the direct
    # alpha -> -1 approach concentrates its mass below double-precision
    # node depth and cannot be quadratured)
    from hypvol import quad as _quad

    for params in (P([0.0]), P([0.7, 1.3]), P([2.0, 2.0, 2.0])):
        want = abcore.limit_alpha_plus_one_times_b(params)
        got = 1.0 if len(params) else 2.0
        for b in params:
            inner = _quad.integrate_finite(
                lambda v, bb=b: (v * (2.0 - v)) ** (0.5 * (bb - 1.0)), 0.0, 1.0, CFG
            )
            got *= 2.0 * inner.value
        worst = max(worst, abs(got - want))
    # imaginary-axis identity for odd parameters
    from hypvol.specfun import f_imag, p_m_poly

    for m in (1, 2, 3):
        for u in (-1.0, 0.5, 2.0):
            theta = math.atan(math.sinh(u))
            bmm = math.factorial(m - 1) ** 2 / math.factorial(2 * m - 1)
            want = (
                bmm
                * complex(math.cos(theta), math.sin(theta))
                / math.cos(theta) ** (2 * m - 1)
                * p_m_poly(m, complex(math.cos(2 * theta), math.sin(2 * theta)))
            )
            worst = max(worst, abs(f_imag(2 * m - 1, u) - want) / (1.0 + abs(want)))
    # log-cos moment identity
    for q, coeffs in ((1, [1]), (2, [1]), (1, [0, 1]), (3, [1, -2, 3])):
        left, right = expect.poly_log_cos_check(q, coeffs)
        worst = max(worst, abs(left - right))
    assert worst <= 1e-8
    _report("criterion-9", f"closed forms vs quadrature, worst deviation {worst:.2e}")


def test_criterion_10_growth_trend():
    # the stated large-d scaling is checked as a property: the ratio to
    # e^(5/4)/sqrt(pi) * (sqrt(e)/d)^d stays in (0.5, 2) and decreases
    # toward 1 monotonically on d = 6..12
    ratios = []
    for d in range(6, 13):
        value = expect.ideal_simplex_volume(d, CFG).value
        asymptote = math.exp(1.25) / math.sqrt(math.pi) * (math.sqrt(math.e) / d) ** d
        ratios.append(value / asymptote)
    for r in ratios:
        assert 0.5 < r < 2.0
    for a, b in zip(ratios, ratios[1:]):
        assert abs(b - 1.0) < abs(a - 1.0)
    _report("criterion-10", "ratios " + ", ".join(f"{r:.3f}" for r in ratios))
