"""Expectation engine for random beta polytopes in the Klein ball model.

Computes expected beta integrals E[int over hull of (1-|x|^2)^beta dx]
and expected hyperbolic volumes for n independent beta-distributed
points in dimension d, by summing a * (linear factor) * b products over
subset classes.  Negative-integer exponents go through the derivative
path where the plain formula has a removable singularity.  Several
families admit exact closed forms (rational multiples of powers of pi):
ideal polytopes in dimension 3, ideal simplices in odd dimension, ideal
polygons, and uniform-in-the-disk polygons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .abcore import ParamMultiset, a_fn, a_prime, b_fn, limit_alpha_plus_one_times_b
from .exact import PiPoly, TrigExpPoly, _cplx, poly_integral_01, poly_pow
from .quad import QuadConfig
from .specfun import gamma_real, harmonic, log_gamma
from . import quad as _quad

__all__ = [
    "BetaSpec",
    "SubsetClass",
    "ExpectationResult",
    "enumerate_classes",
    "expected_beta_integral",
    "expected_hyp_volume",
    "expected_hyp_volume_simplex",
    "expected_beta_integral_simplex",
    "ideal_polytope3",
    "ideal_polytope3_via_sum",
    "alternating_harmonic_sum",
    "ideal_simplex_volume",
    "polygon_beta0",
    "poly_log_cos_check",
]

_POLE_EXACT = 1e-12
_POLE_NEAR = 1e-6


@dataclass(frozen=True)
class BetaSpec:
    """Dimension and the distribution parameters of the n points."""

    d: int
    betas: tuple[float, ...]

    def __init__(self, d: int, betas):
        betas = tuple(float(b) for b in betas)
        if d < 2:
            raise ValueError("BetaSpec requires d >= 2")
        if len(betas) < d + 1:
            raise ValueError("BetaSpec requires at least d+1 points")
        if any(b < -1.0 for b in betas):
            raise ValueError("every beta parameter must be >= -1")
        object.__setattr__(self, "d", int(d))
        object.__setattr__(self, "betas", betas)

    @property
    def n(self) -> int:
        return len(self.betas)

    def gammas(self) -> tuple[float, ...]:
        return tuple(b + 0.5 * self.d for b in self.betas)


@dataclass(frozen=True)
class SubsetClass:
    """All subsets sharing one (inside, outside) parameter split."""

    inside: ParamMultiset
    outside: ParamMultiset
    multiplicity: int


@dataclass
class ExpectationResult:
    value: float
    abs_err_est: float
    exact: PiPoly | None
    representation: str
    pole_path: bool


def enumerate_classes(spec: BetaSpec, cardinalities) -> list[SubsetClass]:
    """Group the subset sums by multiset of parameters.

    Equal beta values are interchangeable, so a subset is determined up
    to multiplicity by how many indices it takes from each distinct
    value; the class multiplicity is the product of binomials.
    """
    cards = sorted(set(int(k) for k in cardinalities))
    if any(k < 0 or k > spec.n for k in cards):
        raise ValueError("cardinalities must lie in [0, n]")
    gammas = spec.gammas()
    groups: dict[float, int] = {}
    for g in gammas:
        groups[g] = groups.get(g, 0) + 1
    values = sorted(groups)
    counts = [groups[v] for v in values]

    out: list[SubsetClass] = []

    def recurse(idx: int, remaining: int, taken: list[int], mult: int):
        if idx == len(values):
            if remaining == 0:
                inside = []
                outside = []
                for v, m, t in zip(values, counts, taken):
                    inside.extend([2.0 * v] * t)
                    outside.extend([2.0 * v] * (m - t))
                out.append(SubsetClass(ParamMultiset(inside), ParamMultiset(outside), mult))
            return
        tail_capacity = sum(counts[idx + 1 :])
        lo = max(0, remaining - tail_capacity)
        hi = min(counts[idx], remaining)
        for t in range(lo, hi + 1):
            recurse(idx + 1, remaining - t, taken + [t], mult * math.comb(counts[idx], t))

    for k in cards:
        recurse(0, k, [], 1)
    return out


def _upper_cards(spec: BetaSpec):
    return range(spec.d + 1, spec.n + 1, 2)


def _lower_cards(spec: BetaSpec):
    return range(spec.d - 1, -1, -2)


def _c_product(gammas) -> float:
    acc = 0.0
    for g in gammas:
        acc += log_gamma(g + 1.0) - log_gamma(g + 0.5)
    return math.exp(acc) * math.pi ** (-0.5 * len(gammas))


def _pick_representation(spec: BetaSpec, representation: str) -> str:
    if representation in ("upper", "lower"):
        return representation
    if representation != "auto":
        raise ValueError("representation must be 'upper', 'lower' or 'auto'")
    upper_count = sum(math.comb(spec.n, k) for k in _upper_cards(spec))
    lower_count = sum(math.comb(spec.n, k) for k in _lower_cards(spec))
    return "lower" if lower_count < upper_count else "upper"


def _sum_terms(classes, term_fn):
    """fsum of multiplicity-weighted terms and their error bounds."""
    vals, errs = [], []
    for cls in classes:
        v, e = term_fn(cls)
        m = float(cls.multiplicity)
        vals.append(m * v)
        errs.append(m * e)
    return math.fsum(vals), math.fsum(errs)


def _beta_integral_regular(
    spec: BetaSpec, beta: float, cfg: QuadConfig, representation: str, closed_forms: bool
) -> tuple[float, float, str]:
    d, n = spec.d, spec.n
    rep = _pick_representation(spec, representation)
    gammas = spec.gammas()
    prefactor = (
        math.pi ** (0.5 * d - 1.0) * gamma_real(beta + 1.0) / math.exp(log_gamma(0.5 * d + beta + 1.0))
    )
    cprod = _c_product(gammas)

    def term(cls: SubsetClass):
        s = cls.inside.total()
        a_res = a_fn(2.0 * beta + d + 2.0 + s, cls.inside, cfg, closed_forms=closed_forms)
        b_res = b_fn(2.0 * beta + d + s, cls.outside, cfg, closed_forms=closed_forms)
        lin = 2.0 * beta + d + 1.0 + s
        v = a_res.value * lin * b_res.value
        e = abs(lin) * (a_res.abs_err_est * abs(b_res.value) + abs(a_res.value) * b_res.abs_err_est)
        return v, e

    if rep == "upper":
        total, err = _sum_terms(enumerate_classes(spec, _upper_cards(spec)), term)
        value = prefactor * cprod * total
        err_out = abs(prefactor) * cprod * err
    else:
        total, err = _sum_terms(enumerate_classes(spec, _lower_cards(spec)), term)
        value = prefactor * (math.pi - cprod * total)
        err_out = abs(prefactor) * cprod * err
    return value, err_out + 1e-15 * abs(value), rep


def _beta_integral_pole(spec: BetaSpec, k: int, cfg: QuadConfig, closed_forms: bool) -> tuple[float, float]:
    """Value at the negative-integer exponent beta = -k via the derivative path."""
    d, n = spec.d, spec.n
    beta = -float(k)
    gammas = spec.gammas()
    prefactor = (
        2.0
        * math.pi ** (0.5 * d - 1.0)
        / math.exp(log_gamma(beta + 0.5 * d + 1.0))
        * (-1.0) ** (k - 1)
        / math.factorial(k - 1)
    )
    cprod = _c_product(gammas)

    def term(cls: SubsetClass):
        s = cls.inside.total()
        ap = a_prime(2.0 * beta + d + 2.0 + s, cls.inside, cfg, closed_forms=closed_forms)
        b_res = b_fn(2.0 * beta + d + s, cls.outside, cfg, closed_forms=closed_forms)
        lin = 2.0 * beta + d + 1.0 + s
        v = ap.value * lin * b_res.value
        e = abs(lin) * (ap.abs_err_est * abs(b_res.value) + abs(ap.value) * b_res.abs_err_est)
        return v, e

    total, err = _sum_terms(enumerate_classes(spec, _upper_cards(spec)), term)
    value = prefactor * cprod * total
    return value, abs(prefactor) * cprod * err + 1e-15 * abs(value)


def expected_beta_integral(
    spec: BetaSpec,
    beta: float,
    cfg: QuadConfig | None = None,
    representation: str = "auto",
    closed_forms: bool = True,
) -> ExpectationResult:
    """Expected integral of (1 - |x|^2)**beta over the random hull.

    Requires beta > -(d+1)/2.  At negative integers the derivative path
    replaces the plain formula, whose singularity there is removable;
    within (1e-12, 1e-6) of a negative integer the plain value is kept
    but its error bound is widened by the disagreement with the
    derivative path at the rounded exponent.
    """
    cfg = cfg or QuadConfig()
    if not beta > -0.5 * (spec.d + 1):
        raise ValueError("expected_beta_integral requires beta > -(d+1)/2")
    nearest = round(beta)
    gap = abs(beta - nearest)
    if nearest <= -1:
        if gap <= _POLE_EXACT:
            value, err = _beta_integral_pole(spec, -int(nearest), cfg, closed_forms)
            return ExpectationResult(value, err, None, "upper", True)
        if gap < _POLE_NEAR:
            value, err, rep = _beta_integral_regular(spec, beta, cfg, representation, closed_forms)
            ref, ref_err = _beta_integral_pole(spec, -int(nearest), cfg, closed_forms)
            return ExpectationResult(value, err + abs(value - ref) + ref_err, None, rep, False)
    value, err, rep = _beta_integral_regular(spec, beta, cfg, representation, closed_forms)
    return ExpectationResult(value, err, None, rep, False)


def _hyp_volume_term_even(cls: SubsetClass, cfg: QuadConfig, closed_forms: bool):
    s = cls.inside.total()
    a_res = a_fn(1.0 + s, cls.inside, cfg, closed_forms=closed_forms)
    if s == 0.0:
        # only possible when every inside parameter is 0 (d = 2 with
        # ideal points); the vanishing linear factor times the b-pole
        # has the finite limit below
        prod = limit_alpha_plus_one_times_b(cls.outside)
        prod_err = 1e-14 * abs(prod)
    else:
        b_res = b_fn(s - 1.0, cls.outside, cfg, closed_forms=closed_forms)
        prod = s * b_res.value
        prod_err = s * b_res.abs_err_est
    v = a_res.value * prod
    e = a_res.abs_err_est * abs(prod) + abs(a_res.value) * prod_err
    return v, e


def _hyp_volume_even(spec: BetaSpec, cfg: QuadConfig, representation: str, closed_forms: bool):
    d = spec.d
    gammas = spec.gammas()
    rep = _pick_representation(spec, representation)
    prefactor = (-2.0 * math.pi) ** (d // 2) / (math.pi * _double_factorial(d - 1))
    cprod = _c_product(gammas)

    def term(cls):
        return _hyp_volume_term_even(cls, cfg, closed_forms)

    if rep == "upper":
        total, err = _sum_terms(enumerate_classes(spec, _upper_cards(spec)), term)
        value = prefactor * cprod * total
    else:
        total, err = _sum_terms(enumerate_classes(spec, _lower_cards(spec)), term)
        value = prefactor * (math.pi - cprod * total)
    return value, abs(prefactor) * cprod * err + 1e-15 * abs(value), rep


def _hyp_volume_odd(spec: BetaSpec, cfg: QuadConfig, closed_forms: bool):
    d = spec.d
    gammas = spec.gammas()
    half = (d - 1) // 2
    prefactor = 2.0 * math.pi ** (half - 1.0) * (-1.0) ** half / math.factorial(half)
    cprod = _c_product(gammas)

    def term(cls: SubsetClass):
        s = cls.inside.total()
        ap = a_prime(1.0 + s, cls.inside, cfg, closed_forms=closed_forms)
        b_res = b_fn(s - 1.0, cls.outside, cfg, closed_forms=closed_forms)
        v = ap.value * s * b_res.value
        e = s * (ap.abs_err_est * abs(b_res.value) + abs(ap.value) * b_res.abs_err_est)
        return v, e

    total, err = _sum_terms(enumerate_classes(spec, _upper_cards(spec)), term)
    value = prefactor * cprod * total
    return value, abs(prefactor) * cprod * err + 1e-15 * abs(value)


def _double_factorial(m: int) -> float:
    return float(math.prod(range(m, 0, -2))) if m > 0 else 1.0


def expected_hyp_volume(
    spec: BetaSpec,
    cfg: QuadConfig | None = None,
    method: str = "auto",
    representation: str = "auto",
    closed_forms: bool = True,
) -> ExpectationResult:
    """Expected hyperbolic volume of the random beta polytope.

    method="auto" returns exact values on the two special families
    (d=2 and d=3 with all points ideal); method="generic" always runs
    the subset-sum formulas, which is the cross-validation path.
    """
    cfg = cfg or QuadConfig()
    if method not in ("auto", "generic"):
        raise ValueError("method must be 'auto' or 'generic'")
    all_ideal = all(b == -1.0 for b in spec.betas)
    if method == "auto" and all_ideal and spec.d == 2:
        exact = PiPoly({1: Fraction(spec.n - 2)})
        return ExpectationResult(exact.evaluate(), 0.0, exact, "lower", False)
    if method == "auto" and all_ideal and spec.d == 3:
        exact = ideal_polytope3(spec.n)
        return ExpectationResult(exact.evaluate(), 0.0, exact, "upper", True)
    if spec.d % 2 == 0:
        value, err, rep = _hyp_volume_even(spec, cfg, representation, closed_forms)
        return ExpectationResult(value, err, None, rep, False)
    value, err = _hyp_volume_odd(spec, cfg, closed_forms)
    return ExpectationResult(value, err, None, "upper", True)


def _simplex_common(d: int, betas) -> tuple[tuple[float, ...], float, float]:
    betas = tuple(float(b) for b in betas)
    if len(betas) != d + 1:
        raise ValueError("a simplex spec needs exactly d+1 beta parameters")
    if any(b < -1.0 for b in betas):
        raise ValueError("every beta parameter must be >= -1")
    gammas = tuple(b + 0.5 * d for b in betas)
    gsum = math.fsum(gammas)
    gprod = math.exp(math.fsum(log_gamma(g + 1.0) - log_gamma(g + 0.5) for g in gammas))
    return gammas, gsum, gprod


def expected_hyp_volume_simplex(d: int, betas, cfg: QuadConfig | None = None) -> ExpectationResult:
    """One-term corollary formulas for n = d+1 points."""
    cfg = cfg or QuadConfig()
    if d < 2:
        raise ValueError("requires d >= 2")
    gammas, gsum, gprod = _simplex_common(d, betas)
    params = ParamMultiset(2.0 * g for g in gammas)
    ratio = math.exp(log_gamma(1.0 + gsum) - log_gamma(0.5 + gsum))
    if d % 2 == 0:
        pref = 2.0 * (-2.0) ** (d // 2) / (math.pi * _double_factorial(d - 1)) * gprod * ratio
        a_res = a_fn(1.0 + 2.0 * gsum, params, cfg)
        value = pref * a_res.value
        err = abs(pref) * a_res.abs_err_est
        return ExpectationResult(value, err + 1e-15 * abs(value), None, "upper", False)
    half = (d - 1) // 2
    pref = 4.0 * (-1.0) ** half / (math.pi**1.5 * math.factorial(half)) * gprod * ratio
    ap = a_prime(1.0 + 2.0 * gsum, params, cfg)
    value = pref * ap.value
    err = abs(pref) * ap.abs_err_est
    return ExpectationResult(value, err + 1e-15 * abs(value), None, "upper", True)


def expected_beta_integral_simplex(
    d: int, betas, beta: float, cfg: QuadConfig | None = None
) -> ExpectationResult:
    """One-term corollary formulas for the expected beta integral, n = d+1."""
    cfg = cfg or QuadConfig()
    if d < 2:
        raise ValueError("requires d >= 2")
    if not beta > -0.5 * (d + 1):
        raise ValueError("requires beta > -(d+1)/2")
    gammas, gsum, gprod = _simplex_common(d, betas)
    params = ParamMultiset(2.0 * g for g in gammas)
    ratio = math.exp(log_gamma(0.5 * d + beta + gsum + 1.5) - log_gamma(0.5 * d + beta + gsum + 1.0))
    nearest = round(beta)
    if nearest <= -1 and abs(beta - nearest) <= _POLE_EXACT:
        k = -int(nearest)
        pref = (
            4.0
            / (math.pi * math.exp(log_gamma(beta + 0.5 * d + 1.0)))
            * (-1.0) ** (k - 1)
            / math.factorial(k - 1)
            * ratio
            * gprod
        )
        ap = a_prime(2.0 * beta + d + 2.0 + 2.0 * gsum, params, cfg)
        value = pref * ap.value
        return ExpectationResult(value, abs(pref) * ap.abs_err_est + 1e-15 * abs(value), None, "upper", True)
    pref = (
        2.0
        * gamma_real(beta + 1.0)
        / (math.pi * math.exp(log_gamma(0.5 * d + beta + 1.0)))
        * ratio
        * gprod
    )
    a_res = a_fn(2.0 * beta + d + 2.0 + 2.0 * gsum, params, cfg)
    value = pref * a_res.value
    return ExpectationResult(value, abs(pref) * a_res.abs_err_est + 1e-15 * abs(value), None, "upper", False)


# -- exact families ---------------------------------------------------------

def ideal_polytope3(n: int) -> PiPoly:
    """Exact expected hyperbolic volume for n ideal points in dimension 3."""
    if n < 4:
        raise ValueError("requires n >= 4")
    return PiPoly({1: Fraction(n, 2) - harmonic(n - 1)})


def ideal_polytope3_via_sum(n: int) -> PiPoly:
    """Same value through the alternating binomial sum, fully in rationals."""
    if n < 4:
        raise ValueError("requires n >= 4")
    return PiPoly({1: alternating_harmonic_sum(n)})


def alternating_harmonic_sum(n: int) -> Fraction:
    """Exact sum of (-1)^l C(n,2l) (l-1)! (n-l-1)! / (n-1)! for l = 2..n//2."""
    if n < 2:
        raise ValueError("requires n >= 2")
    acc = Fraction(0)
    for ell in range(2, n // 2 + 1):
        acc += (
            Fraction((-1) ** ell)
            * math.comb(n, 2 * ell)
            * Fraction(math.factorial(ell - 1) * math.factorial(n - ell - 1), math.factorial(n - 1))
        )
    return acc


def _ideal_simplex_poly(d: int) -> list[Fraction]:
    """Integrand polynomial for the odd-dimension ideal simplex."""
    top = (d - 3) // 2
    return [Fraction((-1) ** j * math.comb(d - 2, top - j)) for j in range(top + 1)]


def _ideal_simplex_odd_exact(d: int) -> PiPoly:
    m = (d - 1) // 2
    integral = poly_integral_01(poly_pow(_ideal_simplex_poly(d), d + 1), extra_power=m)
    half_binom = math.comb(d * d - d - 2, (d * d - d - 2) // 2)
    coeff = Fraction(2) / (math.factorial(m) * half_binom) * integral
    return PiPoly({m: coeff})


def _sinh_pow_series(p: int, terms: int = 26) -> list[float]:
    """Coefficients c_j of integral_0^t sinh(u)**p du = sum c_j t**(p+1+2j)."""
    base = [Fraction(0)] * (2 * terms)
    for i in range(terms):
        base[2 * i] = Fraction(1, math.factorial(2 * i + 1))  # sinh(u)/u series
    powed = poly_pow(base, p)
    out = []
    for j in range(terms):
        idx = 2 * j
        if idx < len(powed):
            out.append(float(powed[idx] / (p + 1 + idx)))
    return out


def _ideal_simplex_even_integrand(d: int):
    """Stable even integrand (inner sinh-power integral)^(d+1) / sinh^(d(d-1)-1).

    Works in log space with the inner integral scaled by exp(-p t) 2**p,
    which keeps every intermediate representable; the exponents satisfy
    (d+1)p - (d(d-1)-1) = -1, so the value decays like exp(-t).
    """
    p = d - 2
    dd = d * (d - 1) - 1
    log2 = math.log(2.0)
    binom = [math.comb(p, k) for k in range(p + 1)]
    series = _sinh_pow_series(p)

    def f(t):
        t = np.abs(np.asarray(t, dtype=float))
        out = np.zeros_like(t)
        pos = t > 0.0
        tp = t[pos]
        log_scaled = np.empty_like(tp)
        small = tp < 0.5
        if small.any():
            # positive power series of the inner integral: no cancellation
            ts = tp[small]
            acc = np.zeros_like(ts)
            tpow = ts ** (p + 1)
            t2 = ts * ts
            for c in series:
                acc += c * tpow
                tpow = tpow * t2
            log_scaled[small] = np.log(acc) - p * ts + p * log2
        big = ~small
        if big.any():
            tb = tp[big]
            acc = np.zeros_like(tb)
            emp = np.exp(-p * tb)
            for k, ck in enumerate(binom):
                ex = p - 2 * k
                if ex == 0:
                    acc += ck * (-1.0) ** k * tb * emp
                else:
                    acc += ck * (-1.0) ** k * (np.exp(-2.0 * k * tb) - emp) / ex
            log_scaled[big] = np.log(np.maximum(acc, 1e-300))
        expo = -tp + (d + 1) * log_scaled + log2 - dd * np.log1p(-np.exp(-2.0 * tp))
        out[pos] = np.exp(expo)
        return out

    return f


def ideal_simplex_volume(d: int, cfg: QuadConfig | None = None) -> ExpectationResult:
    """Expected hyperbolic volume of the simplex on d+1 ideal points.

    Odd d reduces to an exact rational polynomial integral times
    pi**((d-1)/2); even d is a single real-line quadrature with an
    exactly evaluated gamma-ratio prefactor.
    """
    cfg = cfg or QuadConfig()
    if d < 2:
        raise ValueError("requires d >= 2")
    if d % 2 == 1:
        exact = _ideal_simplex_odd_exact(d)
        value = exact.evaluate()
        return ExpectationResult(value, 1e-15 * abs(value), exact, "upper", True)
    from .exact import gamma_half_ratio

    r1, s1 = gamma_half_ratio(d, d - 1)
    r2, s2 = gamma_half_ratio(d * (d - 1), d * (d - 1) - 1)
    frac = Fraction(2 ** (1 + d // 2)) * r1 ** (d + 1) * r2
    s_total = s1 * (d + 1) + s2 - 2  # extra -2 for the leading 1/pi
    pref = (
        float(frac)
        / _double_factorial(d - 1)
        * math.pi ** (0.5 * s_total)
    )
    res = _quad.integrate_real_line(_ideal_simplex_even_integrand(d), cfg)
    value = pref * res.value
    return ExpectationResult(value, abs(pref) * res.abs_err_est + 1e-15 * abs(value), None, "upper", False)


def polygon_beta0(n: int, cfg: QuadConfig | None = None) -> ExpectationResult:
    """Expected hyperbolic area for n uniform points in the unit disk.

    Exact: -2 pi + 2**(n-1) n pi**-(n-2) b_{n-1}(1; 2), where the
    segment integral is a trigonometric-exponential polynomial
    integrated in closed form.
    """
    if n < 3:
        raise ValueError("requires n >= 3")
    b_exact = _b_ones_param2_exact(n - 1)
    total = PiPoly({1: Fraction(-2)}) + b_exact.shift(-(n - 2)) * Fraction(2 ** (n - 1) * n)
    value = total.evaluate()
    return ExpectationResult(value, 1e-14 * abs(value), total, "lower", False)


def _b_ones_param2_exact(m: int) -> PiPoly:
    """Exact segment integral with m repeated parameters equal to 2 at alpha 1."""
    quarter = Fraction(1, 4)
    f2 = TrigExpPoly(
        {
            (0, 0): _cplx(PiPoly({1: quarter})),
            (1, 0): _cplx(Fraction(1, 2)),
            (0, 2): _cplx(0, Fraction(-1, 8)),
            (0, -2): _cplx(0, Fraction(1, 8)),
        }
    )
    cos_x = TrigExpPoly({(0, 1): _cplx(Fraction(1, 2)), (0, -1): _cplx(Fraction(1, 2))})
    return (cos_x * f2.power(m)).integrate_sym_half_pi()


def poly_log_cos_check(q: int, coeffs) -> tuple[float, float]:
    """Both sides of the log-cos moment identity for a rational polynomial Q.

    Left: quadrature of exp(2iq theta) Q(exp(2i theta)) log(cos theta)
    over (-pi/2, pi/2).  Right: (-1)**(q+1) (pi/2) * integral of
    t**(q-1) Q(-t) over (0, 1), exact.  Returns (left, right).
    """
    if q < 1:
        raise ValueError("requires q >= 1")
    coeffs = [Fraction(c) for c in coeffs]
    cfg = QuadConfig()
    left_parts = []
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        m = q + k
        # cos(2m theta) log cos theta over (-pi/2, pi/2), substituted to
        # put the log singularity at 0: theta = pi/2 - t
        f = lambda t, mm=m: np.cos(2 * mm * (0.5 * math.pi - t)) * np.log(np.sin(t))
        res = _quad.integrate_finite(f, 0.0, 0.5 * math.pi, cfg)
        left_parts.append(float(c) * 2.0 * res.value)
    left = math.fsum(left_parts)
    acc = Fraction(0)
    for k, c in enumerate(coeffs):
        acc += c * Fraction((-1) ** k, q + k)
    right = PiPoly({1: Fraction((-1) ** (q + 1), 2) * acc}).evaluate()
    return left, right
