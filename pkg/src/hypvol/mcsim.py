"""Monte-Carlo verification: samplers, hulls, containment, volume oracles.

Everything here is independent of the formula engine: beta samplers in
the closed unit ball, convex hulls in dimensions 2 and 3, an LP-based
containment test, hyperbolic area via angle defect in the Klein disk,
ideal tetrahedron volumes through the Lobachevsky function, and
estimators with standard errors.

Sampling is organized in streams: stream s of a run draws from a
counter-based Philox generator keyed by (seed, s), so results are
bit-identical for a fixed (seed, streams, n_samples) triple no matter
how the streams are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .expect import BetaSpec
from .specfun import c_d_beta, lobachevsky

__all__ = [
    "SampleConfig",
    "McEstimate",
    "DegenerateHullError",
    "sample_beta_point",
    "contains",
    "mc_absorption",
    "hull_d2",
    "hull_d3",
    "hyp_area_polygon_d2",
    "ideal_tetra_volume",
    "mc_ideal_polytope3_volume",
    "mc_hyp_area_d2",
    "mc_simplex_hyp_volume",
    "hyp_volume_simplex_quadrature",
]

_BLOCK = 1 << 16  # sub-batch size; fixed so stream output is reproducible
_IDEAL_EPS = 1e-12


class DegenerateHullError(ValueError):
    """Input points do not span the full dimension."""


@dataclass(frozen=True)
class SampleConfig:
    seed: int
    n_samples: int
    streams: int = 1

    def __post_init__(self):
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if self.streams < 1:
            raise ValueError("streams must be >= 1")


@dataclass
class McEstimate:
    mean: float
    stderr: float
    n: int
    resampled: int = 0


class _Accumulator:
    """Streaming mean/variance over deterministic stream order."""

    def __init__(self):
        self.n = 0
        self.total = 0.0
        self.total_sq = 0.0

    def add(self, values: np.ndarray):
        self.n += values.size
        self.total += float(values.sum())
        self.total_sq += float((values * values).sum())

    def estimate(self) -> McEstimate:
        mean = self.total / self.n
        if self.n > 1:
            var = max(0.0, (self.total_sq - self.n * mean * mean) / (self.n - 1))
        else:
            var = 0.0
        return McEstimate(mean, math.sqrt(var / self.n), self.n)


def _stream_rng(seed: int, stream: int) -> np.random.Generator:
    key = (int(seed) & 0xFFFFFFFFFFFFFFFF) << 64 | (stream & 0xFFFFFFFFFFFFFFFF)
    return np.random.Generator(np.random.Philox(key=key))


def _stream_sizes(cfg: SampleConfig) -> list[int]:
    base, extra = divmod(cfg.n_samples, cfg.streams)
    return [base + (1 if s < extra else 0) for s in range(cfg.streams)]


def _iter_blocks(cfg: SampleConfig):
    for stream, size in enumerate(_stream_sizes(cfg)):
        rng = _stream_rng(cfg.seed, stream)
        remaining = size
        while remaining > 0:
            block = min(remaining, _BLOCK)
            yield rng, block
            remaining -= block


def _sample_directions(rng: np.random.Generator, count: int, d: int) -> np.ndarray:
    v = rng.standard_normal((count, d))
    norms = np.linalg.norm(v, axis=1, keepdims=True)
    norms[norms == 0.0] = 1.0
    return v / norms


def _sample_beta_batch(d: int, beta: float, rng: np.random.Generator, count: int) -> np.ndarray:
    dirs = _sample_directions(rng, count, d)
    if beta == -1.0:
        return dirs
    # squared radius ~ Beta(d/2, beta+1) through the two-gamma construction
    g1 = rng.standard_gamma(0.5 * d, count)
    g2 = rng.standard_gamma(beta + 1.0, count)
    t = g1 / (g1 + g2)
    return dirs * np.sqrt(t)[:, None]


def sample_beta_point(d: int, beta: float, rng: np.random.Generator) -> np.ndarray:
    """One point of the beta family: uniform on the sphere for beta = -1,
    density proportional to (1-|x|^2)**beta inside the ball otherwise."""
    if d < 2:
        raise ValueError("requires d >= 2")
    if beta < -1.0:
        raise ValueError("requires beta >= -1")
    return _sample_beta_batch(d, beta, rng, 1)[0]


# -- containment ------------------------------------------------------------

def contains(points, x, tol: float = 1e-10) -> bool:
    """Whether x lies in the convex hull, by a phase-I feasibility solve.

    Solves {sum l_i p_i = x, sum l_i = 1, l >= 0} with artificial
    variables and Bland's rule, so termination is guaranteed on
    degenerate inputs; affinely dependent point sets are handled by the
    same tableau without special casing.
    """
    pts = np.asarray(points, dtype=float)
    x = np.asarray(x, dtype=float)
    n, d = pts.shape
    m = d + 1
    A = np.vstack([pts.T, np.ones((1, n))])
    b = np.append(x, 1.0)
    flip = b < 0.0
    A[flip] *= -1.0
    b[flip] *= -1.0

    # tableau: n structural columns, m artificial columns, rhs
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = b
    T[m, :] = -T[:m, :].sum(axis=0)
    T[m, n : n + m] = 0.0
    basis = list(range(n, n + m))

    for _ in range(10000):
        enter = -1
        for j in range(n + m):
            if T[m, j] < -1e-12:
                enter = j
                break
        if enter < 0:
            break
        ratios = []
        for i in range(m):
            if T[i, enter] > 1e-12:
                ratios.append((T[i, -1] / T[i, enter], basis[i], i))
        if not ratios:
            break  # unbounded cannot happen in phase I; defensive
        _, _, row = min(ratios)
        piv = T[row, enter]
        T[row] /= piv
        for i in range(m + 1):
            if i != row and T[i, enter] != 0.0:
                T[i] -= T[i, enter] * T[row]
        basis[row] = enter
    return -T[m, -1] <= tol


def _inside_hull_d2_batch(q: np.ndarray) -> np.ndarray:
    """0 in conv(q) per sample; q has shape (N, n, 2), no q_i at 0."""
    ang = np.sort(np.arctan2(q[..., 1], q[..., 0]), axis=1)
    gaps = np.diff(ang, axis=1)
    wrap = 2.0 * math.pi - (ang[:, -1] - ang[:, 0])
    max_gap = np.maximum(gaps.max(axis=1), wrap)
    return max_gap <= math.pi


def _inside_hull_d3_batch(q: np.ndarray) -> np.ndarray:
    """0 in conv(q) per sample; q has shape (N, n, 3)."""
    N, n, _ = q.shape
    outside = np.zeros(N, dtype=bool)
    for i, j in combinations(range(n), 2):
        c = np.cross(q[:, i, :], q[:, j, :])
        ok = np.linalg.norm(c, axis=1) > 1e-12
        dots = np.einsum("nd,nkd->nk", c, q)
        pos = (dots >= -1e-12).all(axis=1)
        neg = (dots <= 1e-12).all(axis=1)
        outside |= ok & (pos | neg)
    return ~outside


def mc_absorption(spec: BetaSpec, beta: float, cfg: SampleConfig) -> McEstimate:
    """Estimate the expected beta integral from hull-containment frequency.

    Draws the n polytope points plus one extra beta point per sample;
    the hit frequency divided by the beta normalizing constant is an
    unbiased estimate of the expected beta integral.
    """
    if not beta > -1.0:
        raise ValueError("mc_absorption requires beta > -1")
    d, n = spec.d, spec.n
    scale = 1.0 / c_d_beta(d, beta)
    acc = _Accumulator()
    for rng, block in _iter_blocks(cfg):
        pts = np.empty((block, n, d))
        for i, bi in enumerate(spec.betas):
            pts[:, i, :] = _sample_beta_batch(d, bi, rng, block)
        x0 = _sample_beta_batch(d, beta, rng, block)
        q = pts - x0[:, None, :]
        if d == 2:
            hits = _inside_hull_d2_batch(q)
        elif d == 3:
            hits = _inside_hull_d3_batch(q)
        else:
            hits = np.fromiter(
                (contains(pts[s], x0[s]) for s in range(block)), dtype=bool, count=block
            )
        acc.add(hits.astype(float) * scale)
    return acc.estimate()


# -- hulls -------------------------------------------------------------------

def _cross2(u, v) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


def hull_d2(points) -> np.ndarray:
    """Counterclockwise convex hull cycle (vertex coordinates)."""
    pts = np.asarray(points, dtype=float)
    if len(pts) < 3:
        raise ValueError("requires at least 3 points")
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    p = pts[order]

    def build(seq):
        out = []
        for v in seq:
            while len(out) >= 2 and _cross2(out[-1] - out[-2], v - out[-2]) <= 0.0:
                out.pop()
            out.append(v)
        return out

    lower = build(p)
    upper = build(p[::-1])
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateHullError("all points are collinear")
    return np.array(hull)


def _initial_simplex(pts: np.ndarray, eps: float):
    n = len(pts)
    i0 = 0
    i1 = next((i for i in range(1, n) if np.linalg.norm(pts[i] - pts[i0]) > eps), None)
    if i1 is None:
        raise DegenerateHullError("all points coincide")
    i2 = next(
        (
            i
            for i in range(1, n)
            if i != i1 and np.linalg.norm(np.cross(pts[i1] - pts[i0], pts[i] - pts[i0])) > eps
        ),
        None,
    )
    if i2 is None:
        raise DegenerateHullError("all points are collinear")
    normal = np.cross(pts[i1] - pts[i0], pts[i2] - pts[i0])
    i3 = next(
        (i for i in range(1, n) if i not in (i1, i2) and abs(np.dot(normal, pts[i] - pts[i0])) > eps),
        None,
    )
    if i3 is None:
        raise DegenerateHullError("all points are coplanar")
    return i0, i1, i2, i3


def hull_d3(points) -> list[tuple[int, int, int]]:
    """Incremental 3-d convex hull; outward-oriented triangle facets.

    Points coplanar with an existing facet are treated as visible, so
    flat patches come out fan-triangulated around the latest such point.
    Returns index triples sorted by index order.
    """
    pts = np.asarray(points, dtype=float)
    n = len(pts)
    if n < 4:
        raise ValueError("requires at least 4 points")
    scale = float(np.abs(pts).max()) or 1.0
    eps = 1e-12 * scale**2

    i0, i1, i2, i3 = _initial_simplex(pts, eps)
    center = pts[[i0, i1, i2, i3]].mean(axis=0)

    def oriented(tri):
        a, b, c = tri
        normal = np.cross(pts[b] - pts[a], pts[c] - pts[a])
        if np.dot(normal, center - pts[a]) > 0.0:
            return (a, c, b)
        return (a, b, c)

    facets = {oriented(t) for t in [(i0, i1, i2), (i0, i1, i3), (i0, i2, i3), (i1, i2, i3)]}

    for p in range(n):
        if p in (i0, i1, i2, i3):
            continue
        visible = []
        for tri in facets:
            a, b, c = tri
            normal = np.cross(pts[b] - pts[a], pts[c] - pts[a])
            if np.dot(normal, pts[p] - pts[a]) > -eps:
                visible.append(tri)
        if not visible:
            continue
        visible_set = set(visible)
        edge_count: dict[tuple[int, int], int] = {}
        for a, b, c in visible:
            for u, v in ((a, b), (b, c), (c, a)):
                key = (u, v) if u < v else (v, u)
                edge_count[key] = edge_count.get(key, 0) + 1
        horizon = [e for e, cnt in edge_count.items() if cnt == 1]
        facets -= visible_set
        for u, v in horizon:
            facets.add(oriented((u, v, p)))
    return sorted(facets)


# -- hyperbolic measurements -------------------------------------------------

def hyp_area_polygon_d2(vertices) -> float:
    """Area by angle defect: (n-2) pi minus the interior angles.

    Angles use the Klein-disk metric; vertices on the boundary circle
    (within 1e-12) contribute angle zero.  The cycle must be convex.
    """
    v = np.asarray(vertices, dtype=float)
    n = len(v)
    if n < 3:
        raise ValueError("requires at least 3 vertices")
    crosses = []
    for i in range(n):
        a, b, c = v[i - 1], v[i], v[(i + 1) % n]
        crosses.append(_cross2(b - a, c - b))
    if all(c <= 1e-14 for c in crosses):
        v = v[::-1]
    elif not all(c >= -1e-14 for c in crosses):
        raise ValueError("vertex cycle is not convex")
    angles = 0.0
    for i in range(n):
        x = v[i]
        r2 = float(x @ x)
        if r2 >= (1.0 - _IDEAL_EPS) ** 2:
            continue
        u = v[(i + 1) % n] - x
        w = v[i - 1] - x
        one = 1.0 - r2
        gu = one * float(u @ u) + float(x @ u) ** 2
        gw = one * float(w @ w) + float(x @ w) ** 2
        guw = one * float(u @ w) + float(x @ u) * float(x @ w)
        angles += math.acos(min(1.0, max(-1.0, guw / math.sqrt(gu * gw))))
    return (n - 2) * math.pi - angles


_CYCLIC = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
_MIX = None


def _mix_rotation() -> np.ndarray:
    global _MIX
    if _MIX is None:
        # fixed rotation by 1 radian about a skew axis; any generic
        # rotation works, it only needs to move axis-aligned points
        axis = np.array([1.0, 2.0, 3.0]) / math.sqrt(14.0)
        k = np.array(
            [[0.0, -axis[2], axis[1]], [axis[2], 0.0, -axis[0]], [-axis[1], axis[0], 0.0]]
        )
        _MIX = np.eye(3) + math.sin(1.0) * k + (1.0 - math.cos(1.0)) * (k @ k)
    return _MIX


def _tetra_volumes_batch(p: np.ndarray) -> np.ndarray:
    """Hyperbolic volumes of ideal tetrahedra; p has shape (N, 4, 3)."""
    p = np.array(p, dtype=float)
    for _ in range(3):
        near_pole = (np.abs(1.0 - p[..., 2]) < 1e-9).any(axis=1)
        if not near_pole.any():
            break
        p[near_pole] = p[near_pole] @ _CYCLIC.T
    else:
        near_pole = (np.abs(1.0 - p[..., 2]) < 1e-9).any(axis=1)
        if near_pole.any():
            p[near_pole] = p[near_pole] @ _mix_rotation().T
    z = (p[..., 0] + 1j * p[..., 1]) / (1.0 - p[..., 2])
    z0, z1, z2, z3 = z[:, 0], z[:, 1], z[:, 2], z[:, 3]
    with np.errstate(divide="ignore", invalid="ignore"):
        cr = ((z0 - z2) * (z1 - z3)) / ((z0 - z3) * (z1 - z2))
        a1 = np.angle(cr)
        a2 = np.angle(1.0 / (1.0 - cr))
        a3 = np.angle(1.0 - 1.0 / cr)
    vols = np.abs(lobachevsky(a1) + lobachevsky(a2) + lobachevsky(a3))
    return np.where(np.isfinite(vols), vols, 0.0)


def ideal_tetra_volume(v1, v2, v3, v4) -> float:
    """Volume of the ideal tetrahedron with the four given boundary points.

    The sphere points are carried to the extended complex plane by
    stereographic projection; the volume is the sum of Lobachevsky
    values at the cross-ratio angles.
    """
    p = np.array([v1, v2, v3, v4], dtype=float)
    for i, j in combinations(range(4), 2):
        if np.linalg.norm(p[i] - p[j]) < 1e-12:
            raise ValueError("coincident vertices")
    return float(_tetra_volumes_batch(p[None, :, :])[0])


def _hull_volumes_bruteforce(P: np.ndarray) -> np.ndarray:
    """Hull volumes via star decomposition from vertex 0; P is (N, n, 3).

    Enumerates candidate facets as triples with every other point
    strictly on one side; valid for points in general position on the
    sphere.  Samples violating the triangulated Euler count F = 2n - 4
    get volume nan (callers resample them).
    """
    N, n, _ = P.shape
    vols = np.zeros(N)
    facet_count = np.zeros(N, dtype=int)
    for tri in combinations(range(n), 3):
        i, j, k = tri
        normal = np.cross(P[:, j, :] - P[:, i, :], P[:, k, :] - P[:, i, :])
        rest = [r for r in range(n) if r not in tri]
        dots = np.einsum("nd,nrd->nr", normal, P[:, rest, :] - P[:, i, None, :])
        is_facet = (dots > 1e-12).all(axis=1) | (dots < -1e-12).all(axis=1)
        facet_count += is_facet
        if 0 in tri:
            continue
        idx = np.nonzero(is_facet)[0]
        if idx.size:
            quad = P[idx][:, [0, i, j, k], :]
            vols[idx] += _tetra_volumes_batch(quad)
    bad = facet_count != 2 * n - 4
    if bad.any():
        vols[bad] = np.nan
    return vols


def _hull_volume_via_hull_d3(points: np.ndarray) -> float:
    facets = hull_d3(points)
    total = 0.0
    for tri in facets:
        if 0 in tri:
            continue
        total += ideal_tetra_volume(points[0], *points[list(tri)])
    return total


def mc_ideal_polytope3_volume(n: int, cfg: SampleConfig) -> McEstimate:
    """Sample mean of hyperbolic volumes of hulls of n uniform sphere points.

    Each sample decomposes the hull into ideal tetrahedra sharing the
    first vertex.  Degenerate hulls (probability zero) are resampled;
    the resample count is tracked on the returned estimate.
    """
    if n < 4:
        raise ValueError("requires n >= 4")
    acc = _Accumulator()
    resampled = 0
    for rng, block in _iter_blocks(cfg):
        P = rng.standard_normal((block, n, 3))
        P /= np.linalg.norm(P, axis=2, keepdims=True)
        if n == 4:
            vols = _tetra_volumes_batch(P)
        elif n <= 10:
            vols = _hull_volumes_bruteforce(P)
            while np.isnan(vols).any():
                bad = np.nonzero(np.isnan(vols))[0]
                resampled += bad.size
                Q = rng.standard_normal((bad.size, n, 3))
                Q /= np.linalg.norm(Q, axis=2, keepdims=True)
                vols[bad] = _hull_volumes_bruteforce(Q)
        else:
            vols = np.fromiter(
                (_hull_volume_via_hull_d3(P[s]) for s in range(block)), dtype=float, count=block
            )
        acc.add(vols)
    est = acc.estimate()
    est.resampled = resampled
    return est


def mc_hyp_area_d2(spec: BetaSpec, cfg: SampleConfig) -> McEstimate:
    """Sample mean of hyperbolic hull areas in the Klein disk (angle defect)."""
    if spec.d != 2:
        raise ValueError("requires d = 2")
    acc = _Accumulator()
    for rng, block in _iter_blocks(cfg):
        pts = np.empty((block, spec.n, 2))
        for i, bi in enumerate(spec.betas):
            pts[:, i, :] = _sample_beta_batch(2, bi, rng, block)
        areas = np.empty(block)
        for s in range(block):
            areas[s] = hyp_area_polygon_d2(hull_d2(pts[s]))
        acc.add(areas)
    return acc.estimate()


def hyp_volume_simplex_quadrature(vertices, cfg: SampleConfig) -> McEstimate:
    """Monte-Carlo integral of the hyperbolic density over a fixed simplex.

    Uniform barycentric samples (normalized exponentials) weighted by
    the Euclidean simplex volume.  All vertices must be strictly inside
    the ball; ideal vertices need the angle-defect or tetrahedron
    oracles instead.
    """
    v = np.asarray(vertices, dtype=float)
    k, d = v.shape
    if k != d + 1 or d not in (2, 3):
        raise ValueError("requires d+1 vertices in dimension 2 or 3")
    if (np.linalg.norm(v, axis=1) > 1.0 - 1e-9).any():
        raise ValueError("vertices must be strictly inside the unit ball")
    vol_eucl = abs(np.linalg.det(v[1:] - v[0])) / math.factorial(d)
    acc = _Accumulator()
    for rng, block in _iter_blocks(cfg):
        w = rng.standard_exponential((block, d + 1))
        w /= w.sum(axis=1, keepdims=True)
        x = w @ v
        r2 = (x * x).sum(axis=1)
        acc.add(vol_eucl * (1.0 - r2) ** (-0.5 * (d + 1)))
    return acc.estimate()


def mc_simplex_hyp_volume(spec: BetaSpec, cfg: SampleConfig, inner: int = 128) -> McEstimate:
    """Expected hyperbolic simplex volume for interior beta points.

    Outer samples draw the d+1 vertices; each volume is estimated by a
    fixed-size inner barycentric sample, which keeps the outer mean
    unbiased.
    """
    d = spec.d
    if spec.n != d + 1 or d not in (2, 3):
        raise ValueError("requires n = d+1 points in dimension 2 or 3")
    if any(b <= -1.0 for b in spec.betas):
        raise ValueError("requires interior points (all beta > -1)")
    acc = _Accumulator()
    fact = math.factorial(d)
    for rng, block in _iter_blocks(cfg):
        verts = np.empty((block, d + 1, d))
        for i, bi in enumerate(spec.betas):
            verts[:, i, :] = _sample_beta_batch(d, bi, rng, block)
        vol_eucl = np.abs(np.linalg.det(verts[:, 1:, :] - verts[:, :1, :])) / fact
        w = rng.standard_exponential((block, inner, d + 1))
        w /= w.sum(axis=2, keepdims=True)
        x = np.einsum("bik,bkd->bid", w, verts)
        r2 = (x * x).sum(axis=2)
        integrand = (1.0 - r2) ** (-0.5 * (d + 1))
        acc.add(vol_eucl * integrand.mean(axis=1))
    return acc.estimate()
