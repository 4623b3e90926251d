"""Parameter integrals with cosh and cos kernels, and their combinations.

``a_fn`` integrates cosh(x)**(-alpha) times a product of imaginary-axis
factors over the real line; ``b_fn`` integrates cos(x)**alpha times a
product of segment factors over (-pi/2, pi/2).  ``theta_fn`` is the
normalized product a * (linear factor) * b that the expectation engine
sums over subsets.  Closed forms are dispatched for empty, singleton and
all-ones parameter lists; everything else goes through double-exponential
quadrature with stable log-magnitude/phase evaluation of the integrands.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

import numpy as np

from . import quad
from .exact import PiPoly, poly_integral_01, poly_pow
from .quad import QuadConfig, ValueWithError
from .specfun import (
    _f_real_from_z,
    _inc_beta_parts,
    _log_cosh,
    c_one_dim,
    cosh_pow_integral_scaled,
    log_gamma,
)

__all__ = [
    "ParamMultiset",
    "a_fn",
    "b_fn",
    "b_fn_alt",
    "a_prime",
    "a_ones",
    "b_ones",
    "a_prime_ones_at_pole",
    "a_prime_odd_repeated",
    "limit_alpha_plus_one_times_b",
    "theta_fn",
    "clear_cache",
    "set_cache_enabled",
]

_REL_CLOSED = 1e-14  # error assigned to closed-form gamma-ratio values


class ParamMultiset:
    """Sorted multiset of non-negative real parameters."""

    __slots__ = ("entries",)

    def __init__(self, entries=()):
        vals = tuple(sorted(float(v) for v in entries))
        if any(v < 0 or not math.isfinite(v) for v in vals):
            raise ValueError("parameters must be finite and >= 0")
        object.__setattr__(self, "entries", vals)

    def __setattr__(self, *a):
        raise AttributeError("ParamMultiset is immutable")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __eq__(self, other):
        if isinstance(other, ParamMultiset):
            return self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"ParamMultiset{self.entries!r}"

    def total(self) -> float:
        return math.fsum(self.entries)

    def scaled(self, factor: float) -> "ParamMultiset":
        return ParamMultiset(v * factor for v in self.entries)


def _as_params(params) -> ParamMultiset:
    return params if isinstance(params, ParamMultiset) else ParamMultiset(params)


# -- cache ---------------------------------------------------------------

_cache_lock = threading.Lock()
_cache: dict = {}
_cache_enabled = True


def set_cache_enabled(enabled: bool) -> None:
    global _cache_enabled
    with _cache_lock:
        _cache_enabled = bool(enabled)
        if not enabled:
            _cache.clear()


def clear_cache() -> None:
    with _cache_lock:
        _cache.clear()


def _cache_get(key):
    if not _cache_enabled:
        return None
    with _cache_lock:
        return _cache.get(key)


def _cache_put(key, value):
    if _cache_enabled:
        with _cache_lock:
            _cache[key] = value


def _cfg_key(cfg: QuadConfig):
    return (cfg.rel_tol, cfg.abs_tol, cfg.max_level)


# -- closed forms ---------------------------------------------------------

def _a_empty(alpha: float) -> float:
    if not alpha > 0:
        raise ValueError("a with no parameters requires alpha > 0")
    return math.sqrt(math.pi) * math.exp(log_gamma(0.5 * alpha) - log_gamma(0.5 * (alpha + 1.0)))


def _a_single(alpha: float, a1: float) -> float:
    return (
        0.5
        * math.pi
        * math.exp(
            log_gamma(0.5 * alpha)
            + log_gamma(0.5 * (a1 + 1.0))
            - log_gamma(0.5 * (alpha + 1.0))
            - log_gamma(0.5 * (a1 + 2.0))
        )
    )


def _b_empty(alpha: float) -> float:
    return math.sqrt(math.pi) * math.exp(log_gamma(0.5 * (alpha + 1.0)) - log_gamma(0.5 * (alpha + 2.0)))


def _b_single(alpha: float, a1: float) -> float:
    return (
        0.5
        * math.pi
        * math.exp(
            log_gamma(0.5 * (alpha + 1.0))
            + log_gamma(0.5 * (a1 + 1.0))
            - log_gamma(0.5 * (alpha + 2.0))
            - log_gamma(0.5 * (a1 + 2.0))
        )
    )


def a_ones(d: int, alpha: float) -> float:
    """Closed form for d repeated unit parameters, alpha > d.

    Returns 0 when (alpha+1)/2 - d hits a pole of the reciprocal gamma.
    """
    if d < 0:
        raise ValueError("d must be >= 0")
    if not alpha > d:
        raise ValueError("a_ones requires alpha > d")
    q = 0.5 * (alpha + 1.0) - d
    if q <= 0 and abs(q - round(q)) < 1e-12:
        return 0.0
    if q <= 0:
        # reflect the reciprocal gamma through the sine formula
        recip = math.sin(math.pi * q) / math.pi * math.exp(log_gamma(1.0 - q))
    else:
        recip = math.exp(-log_gamma(q))
    return (
        math.pi
        * math.exp(log_gamma(alpha - d) - (alpha - d - 1.0) * math.log(2.0) - log_gamma(0.5 * (alpha + 1.0)))
        * recip
    )


def b_ones(d: int, alpha: float) -> float:
    """Closed form for d repeated unit parameters, alpha > -1."""
    if d < 0:
        raise ValueError("d must be >= 0")
    if not alpha > -1.0:
        raise ValueError("b_ones requires alpha > -1")
    return math.exp(
        (alpha + d) * math.log(2.0)
        + log_gamma(0.5 * (alpha + 1.0))
        + log_gamma(0.5 * (alpha + 1.0) + d)
        - log_gamma(alpha + d + 1.0)
    )


def a_prime_ones_at_pole(k: int) -> float:
    """First-argument derivative at (k+1; 1,...,1) for even k, where a itself vanishes."""
    if k < 2 or k % 2 != 0:
        raise ValueError("requires even k >= 2")
    return (math.pi / k) * (-1.0) ** (k // 2 - 1)


def a_prime_odd_repeated(m: int, q: int) -> PiPoly:
    """Exact derivative value for 2q repeated odd parameters 2m-1 at the vanishing point.

    B(m,m)**(2q) * (-1)**(q+1) * (pi/2) * integral of t**(q-1) P_m(-t)**(2q).
    """
    if m < 1 or q < 1:
        raise ValueError("m, q must be >= 1")
    bmm = Fraction(math.factorial(m - 1) ** 2, math.factorial(2 * m - 1))
    pm_neg = [Fraction((-1) ** r * math.comb(2 * m - 1, m - 1 - r)) for r in range(m)]
    integral = poly_integral_01(poly_pow(pm_neg, 2 * q), extra_power=q - 1)
    coeff = bmm ** (2 * q) * Fraction((-1) ** (q + 1), 2) * integral
    return PiPoly({1: coeff})


def limit_alpha_plus_one_times_b(params) -> float:
    """Limit of (alpha+1) * b(alpha; params) as alpha decreases to -1."""
    params = _as_params(params)
    if len(params) == 0:
        return 2.0
    acc = 1.0
    for a in params:
        acc *= math.sqrt(math.pi) * math.exp(log_gamma(0.5 * (a + 1.0)) - log_gamma(0.5 * (a + 2.0)))
    return acc


def _all_ones(params: ParamMultiset) -> bool:
    return len(params) > 0 and all(v == 1.0 for v in params)


# -- quadrature integrands -------------------------------------------------

def _a_integrand(alpha: float, params: ParamMultiset, log_weight: bool):
    betas = params.entries
    tau = alpha - params.total()
    h_consts = [0.5 / c_one_dim(0.5 * (b - 1.0)) for b in betas]

    def f(x):
        L = _log_cosh(x)
        logmag = -tau * L
        phase = np.zeros_like(L)
        for b, hb in zip(betas, h_consts):
            g_scaled = cosh_pow_integral_scaled(b, x)
            h_scaled = hb * np.exp(-b * L)
            logmag = logmag + np.log(np.hypot(h_scaled, g_scaled))
            phase = phase + np.arctan2(g_scaled, h_scaled)
        mag = np.exp(logmag)
        vals = mag * np.cos(phase) + 1j * (mag * np.sin(phase))
        if log_weight:
            vals = vals * (-L)
        return vals

    return f


def _a_quadrature(alpha: float, params: ParamMultiset, cfg: QuadConfig, log_weight: bool):
    value, err = quad.integrate_real_line_any(_a_integrand(alpha, params, log_weight), cfg)
    return value, err


def _b_quadrature(alpha: float, params: ParamMultiset, cfg: QuadConfig) -> ValueWithError:
    betas = params.entries

    def half(upper: bool):
        def f(t):
            half_t = 0.5 * t
            z_low = np.sin(half_t) ** 2
            z_high = np.cos(half_t) ** 2
            vals = np.sin(t) ** alpha
            for b in betas:
                if upper:
                    vals = vals * _f_real_from_z(b, z_high, z_low)
                else:
                    vals = vals * _f_real_from_z(b, z_low, z_high)
            return vals

        return quad.integrate_finite(f, 0.0, 0.5 * math.pi, cfg)

    lo = half(False)
    hi = half(True)
    return ValueWithError(lo.value + hi.value, lo.abs_err_est + hi.abs_err_est, "tanh-sinh")


def a_fn(alpha: float, params, cfg: QuadConfig | None = None, closed_forms: bool = True) -> ValueWithError:
    """Real-line parameter integral; requires alpha > sum(params).

    The integrand's imaginary part integrates to zero by symmetry; the
    computed residue is checked against the error estimate.
    """
    params = _as_params(params)
    cfg = cfg or QuadConfig()
    if not alpha > params.total():
        raise ValueError("a_fn requires alpha > sum of parameters")
    if closed_forms:
        if len(params) == 0:
            return ValueWithError(_a_empty(alpha), _REL_CLOSED * abs(_a_empty(alpha)), "closed-form")
        if len(params) == 1:
            v = _a_single(alpha, params.entries[0])
            return ValueWithError(v, _REL_CLOSED * abs(v), "closed-form")
        if _all_ones(params):
            v = a_ones(len(params), alpha)
            return ValueWithError(v, _REL_CLOSED * abs(v) + 1e-300, "closed-form")
    key = ("a", alpha, params.entries, _cfg_key(cfg))
    hit = _cache_get(key)
    if hit is None:
        value, err = _a_quadrature(alpha, params, cfg, log_weight=False)
        resid = abs(value.imag) if isinstance(value, complex) else 0.0
        if resid > max(10.0 * err, 1e-9 * max(1.0, abs(value))):
            raise ArithmeticError("imaginary residue exceeds the quadrature error estimate")
        hit = (float(np.real(value)), err + resid)
        _cache_put(key, hit)
    return ValueWithError(hit[0], hit[1], "de-real-line")


def a_prime(alpha: float, params, cfg: QuadConfig | None = None, closed_forms: bool = True) -> ValueWithError:
    """Derivative of a_fn in its first argument, via the log-weighted integral."""
    params = _as_params(params)
    cfg = cfg or QuadConfig()
    if not alpha > params.total():
        raise ValueError("a_prime requires alpha > sum of parameters")
    if closed_forms and len(params) >= 2 and len(params) % 2 == 0:
        first = params.entries[0]
        if all(v == first for v in params.entries):
            odd = round(first)
            if abs(first - odd) < 1e-12 and odd >= 1 and odd % 2 == 1:
                q = len(params) // 2
                m = (odd + 1) // 2
                if abs(alpha - (2 * q * odd + 1)) < 1e-12:
                    v = a_prime_odd_repeated(m, q).evaluate()
                    return ValueWithError(v, _REL_CLOSED * abs(v), "closed-form")
    key = ("a'", alpha, params.entries, _cfg_key(cfg))
    hit = _cache_get(key)
    if hit is None:
        value, err = _a_quadrature(alpha, params, cfg, log_weight=True)
        resid = abs(value.imag) if isinstance(value, complex) else 0.0
        hit = (float(np.real(value)), err + resid)
        _cache_put(key, hit)
    return ValueWithError(hit[0], hit[1], "de-real-line")


def b_fn(alpha: float, params, cfg: QuadConfig | None = None, closed_forms: bool = True) -> ValueWithError:
    """Segment parameter integral; requires alpha > -1."""
    params = _as_params(params)
    cfg = cfg or QuadConfig()
    if not alpha > -1.0:
        raise ValueError("b_fn requires alpha > -1")
    if closed_forms:
        if len(params) == 0:
            v = _b_empty(alpha)
            return ValueWithError(v, _REL_CLOSED * abs(v), "closed-form")
        if len(params) == 1:
            v = _b_single(alpha, params.entries[0])
            return ValueWithError(v, _REL_CLOSED * abs(v), "closed-form")
        if _all_ones(params):
            v = b_ones(len(params), alpha)
            return ValueWithError(v, _REL_CLOSED * abs(v), "closed-form")
    key = ("b", alpha, params.entries, _cfg_key(cfg))
    hit = _cache_get(key)
    if hit is None:
        res = _b_quadrature(alpha, params, cfg)
        hit = (res.value, res.abs_err_est)
        _cache_put(key, hit)
    return ValueWithError(hit[0], hit[1], "tanh-sinh")


def b_fn_alt(alpha: float, params, cfg: QuadConfig | None = None) -> ValueWithError:
    """Alternative segment representation on (-1, 1); used as a cross-check oracle."""
    params = _as_params(params)
    cfg = cfg or QuadConfig()
    if not alpha > -1.0:
        raise ValueError("b_fn_alt requires alpha > -1")
    betas = params.entries
    h_consts = [0.5 / c_one_dim(0.5 * (b - 1.0)) for b in betas]

    def f(v):
        zc = v * (2.0 - v)  # 1 - (1-v)^2, no cancellation
        z = (1.0 - v) ** 2
        weight = zc ** (0.5 * (alpha - 1.0))
        prod_low = np.ones_like(v)
        prod_high = np.ones_like(v)
        for b, hb in zip(betas, h_consts):
            inner = 0.5 * _inc_beta_parts(z, zc, 0.5, 0.5 * (b + 1.0))
            prod_low = prod_low * (hb - inner)
            prod_high = prod_high * (hb + inner)
        return weight * (prod_low + prod_high)

    res = quad.integrate_finite(f, 0.0, 1.0, cfg)
    return ValueWithError(res.value, res.abs_err_est, "tanh-sinh-alt")


_POLE_EXACT = 1e-12
_POLE_NEAR = 1e-6


def theta_fn(x: float, y, z, cfg: QuadConfig | None = None, closed_forms: bool = True) -> ValueWithError:
    """Normalized product (1/2pi) * prod(c) * a(...) * (linear) * b(...).

    The first argument of the b-term is 2x + 2*sum(y); when it equals -1
    (within 1e-12) the product (linear factor) * b is replaced by its
    finite limit.  Within (1e-12, 1e-6) of -1 the value is computed
    directly and the error estimate inflated by the cancellation factor.
    """
    y = _as_params(y)
    z = _as_params(z)
    cfg = cfg or QuadConfig()
    if x < -0.5:
        raise ValueError("theta_fn requires x >= -1/2")
    s = 2.0 * x + 2.0 * y.total()
    pref = 1.0 / (2.0 * math.pi)
    for w in (*y, *z):
        pref *= c_one_dim(w - 0.5)
    a_res = a_fn(s + 2.0, y.scaled(2.0), cfg, closed_forms=closed_forms)
    barg = s
    gap = abs(barg + 1.0)
    if gap <= _POLE_EXACT:
        prod = limit_alpha_plus_one_times_b(z.scaled(2.0))
        prod_err = _REL_CLOSED * abs(prod)
    elif gap < _POLE_NEAR:
        # the b-integrand's mass near the pole sits below double-precision
        # node depth, so direct quadrature is meaningless here; use the
        # limit value with a first-order error band in the gap
        prod = limit_alpha_plus_one_times_b(z.scaled(2.0))
        prod_err = abs(prod) * 100.0 * gap
    else:
        b_res = b_fn(barg, z.scaled(2.0), cfg, closed_forms=closed_forms)
        lin = s + 1.0
        prod = lin * b_res.value
        prod_err = abs(lin) * b_res.abs_err_est
    value = pref * a_res.value * prod
    err = abs(pref) * (abs(a_res.value) * prod_err + a_res.abs_err_est * abs(prod))
    return ValueWithError(value, max(err, cfg.abs_tol), "theta")
