"""Geometric primitives and the two illumination predicates.

Arithmetic policy: everything 2D that feeds exact verdicts (polygons,
piercing arcs) runs on ``fractions.Fraction``; dimensions >= 3 run on
binary floats with an explicit strictness margin.  Inequalities are
strict throughout: a direction tangent to the body at a boundary point
does not illuminate it.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import (
    DomainError,
    PreconditionViolation,
    UnsupportedBody,
)

Scalar = Fraction | int | float


# --------------------------------------------------------------------------
# exact rational vector helpers (2D)
# --------------------------------------------------------------------------

def as_fraction(x) -> Fraction:
    """Exact conversion; floats are converted via their binary value."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


def frac_vec(coords) -> tuple[Fraction, ...]:
    return tuple(as_fraction(c) for c in coords)


def cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _half_plane(v) -> int:
    """0 for angle in [0, pi), 1 for [pi, 2pi); v must be nonzero."""
    if v[1] > 0 or (v[1] == 0 and v[0] > 0):
        return 0
    return 1


def angle_cmp(a, b) -> int:
    """Exact comparison of 2D vectors by angle in [0, 2pi)."""
    ha, hb = _half_plane(a), _half_plane(b)
    if ha != hb:
        return -1 if ha < hb else 1
    c = cross2(a, b)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


angle_sort_key = cmp_to_key(angle_cmp)


def _rel_class(base, z) -> int:
    """Coarse CCW offset of z from base: 0 at 0, 1 in (0,pi), 2 at pi, 3 in (pi,2pi)."""
    c = cross2(base, z)
    if c > 0:
        return 1
    if c < 0:
        return 3
    return 0 if dot(base, z) > 0 else 2


def ccw_rel_lt(base, a, b) -> bool:
    """True iff the CCW offset of a from base is strictly less than that of b."""
    ca, cb = _rel_class(base, a), _rel_class(base, b)
    if ca != cb:
        return ca < cb
    if ca in (0, 2):
        return False
    return cross2(a, b) > 0


def in_halfopen_arc(start, end, x) -> bool:
    """x in the CCW arc [start, end), endpoints as exact vectors."""
    return ccw_rel_lt(start, x, end)


def in_open_arc(start, end, x) -> bool:
    """x in the CCW arc (start, end)."""
    return _rel_class(start, x) != 0 and ccw_rel_lt(start, x, end)


def is_exact_coords(coords) -> bool:
    return all(isinstance(c, (Fraction, int)) for c in coords)


# --------------------------------------------------------------------------
# domain types
# --------------------------------------------------------------------------

class Direction:
    """A nonzero d-vector naming a point of the unit sphere.

    Stored unnormalized; two directions are equal iff one is a positive
    scalar multiple of the other (exact, also for float coordinates via
    their binary rational values).
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence[Scalar]):
        coords = tuple(coords)
        if len(coords) < 2:
            raise DomainError("directions need dimension >= 2")
        if all(c == 0 for c in coords):
            raise DomainError("zero vector is not a direction")
        self.coords = coords

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def is_exact(self) -> bool:
        return is_exact_coords(self.coords)

    def unit(self) -> np.ndarray:
        v = np.asarray([float(c) for c in self.coords], dtype=np.float64)
        return v / np.linalg.norm(v)

    def _canonical(self) -> tuple[int, ...]:
        fracs = [as_fraction(c) for c in self.coords]
        from math import gcd, lcm
        den = lcm(*(f.denominator for f in fracs))
        ints = [int(f * den) for f in fracs]
        g = gcd(*(abs(i) for i in ints))
        return tuple(i // g for i in ints)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Direction):
            return NotImplemented
        return self._canonical() == other._canonical()

    def __hash__(self) -> int:
        return hash(self._canonical())

    def __repr__(self) -> str:
        return f"Direction({list(self.coords)!r})"


class DirectionMultiset:
    """Directions with positive integer multiplicities."""

    def __init__(self, entries: Sequence[tuple[Direction, int]]):
        entries = [(d, int(m)) for d, m in entries]
        if not entries:
            raise DomainError("direction multiset must be nonempty")
        if any(m < 1 for _, m in entries):
            raise DomainError("multiplicities must be >= 1")
        dims = {d.dim for d, _ in entries}
        if len(dims) != 1:
            raise DomainError("mixed dimensions in direction multiset")
        self.entries = entries

    @classmethod
    def from_vectors(cls, vectors, mults=None) -> "DirectionMultiset":
        vectors = list(vectors)
        if mults is None:
            mults = [1] * len(vectors)
        return cls([(Direction(v), m) for v, m in zip(vectors, mults)])

    @property
    def dim(self) -> int:
        return self.entries[0][0].dim

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        units = np.stack([d.unit() for d, _ in self.entries])
        mults = np.asarray([m for _, m in self.entries], dtype=np.int64)
        return units, mults

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __repr__(self) -> str:
        return f"DirectionMultiset({self.entries!r})"


@dataclass(frozen=True)
class Ball:
    """Origin-centered unit ball of dimension d >= 2."""

    dim: int = 2

    def __post_init__(self):
        if self.dim < 2:
            raise DomainError("ball dimension must be >= 2")


@dataclass(frozen=True)
class Tolerance:
    """Strictness margin and sample budget for float-mode verification."""

    margin: float = 1e-6
    samples: Optional[int] = None

    def __post_init__(self):
        if self.margin < 0:
            raise DomainError("margin must be >= 0")
        if self.samples is not None and self.samples < 1:
            raise DomainError("sample count must be >= 1")


#: per-sphere-dimension default sample counts for verification
DEFAULT_SAMPLES = {2: 100_000, 3: 200_000, 4: 1_000_000, 5: 2_000_000}


def resolve_samples(tol: Tolerance, dim: int) -> int:
    if tol.samples is not None:
        return tol.samples
    try:
        return DEFAULT_SAMPLES[dim]
    except KeyError:
        raise DomainError(
            f"no default sample count for dimension {dim}; pass Tolerance(samples=...)"
        ) from None


class ConvexPolygon:
    """Strictly convex polygon, CCW vertex order, exact rational coordinates."""

    def __init__(self, vertices):
        verts = tuple(frac_vec(v) for v in vertices)
        if len(verts) < 3:
            raise DomainError("polygon needs at least 3 vertices")
        if len(set(verts)) != len(verts):
            raise DomainError("repeated vertex")
        n = len(verts)
        edges = tuple(
            (verts[(i + 1) % n][0] - verts[i][0], verts[(i + 1) % n][1] - verts[i][1])
            for i in range(n)
        )
        for i in range(n):
            if cross2(edges[i], edges[(i + 1) % n]) <= 0:
                raise DomainError(
                    "polygon must be strictly convex with CCW vertex order"
                )
        # all turns positive still admits multiple windings; a simple convex
        # cycle descends through angle zero exactly once
        descents = sum(
            1 for i in range(n) if angle_cmp(edges[i], edges[(i + 1) % n]) > 0
        )
        if descents != 1:
            raise DomainError("vertex cycle winds more than once")
        self.vertices = verts
        self.edges = edges

    @property
    def n(self) -> int:
        return len(self.vertices)

    def outward_normal(self, i: int) -> tuple[Fraction, Fraction]:
        """Outward normal of the edge from vertex i to vertex i+1 (unnormalized)."""
        e = self.edges[i % self.n]
        return (e[1], -e[0])

    def vertex_array(self) -> np.ndarray:
        return np.asarray([[float(x), float(y)] for x, y in self.vertices])

    def locate_boundary_point(self, p) -> tuple[str, int]:
        """Exact location of p on the boundary: ("vertex", i) or ("edge", i).

        Raises PreconditionViolation when p is not on the boundary.
        """
        p = frac_vec(p)
        n = self.n
        for i, v in enumerate(self.vertices):
            if v == p:
                return ("vertex", i)
        for i in range(n):
            a = self.vertices[i]
            d = (p[0] - a[0], p[1] - a[1])
            e = self.edges[i]
            if cross2(e, d) == 0:
                t_num = dot(e, d)
                if 0 < t_num < dot(e, e):
                    return ("edge", i)
        raise PreconditionViolation("point is not on the polygon boundary")

    def __repr__(self) -> str:
        return f"ConvexPolygon({[tuple(map(str, v)) for v in self.vertices]})"


@dataclass
class SupportFunctionBody:
    """Smooth 2D convex body given by its support function h(theta).

    ``support`` maps an outward normal angle to the support value and must
    accept numpy arrays.  ``support_prime`` is the derivative; when omitted
    it is estimated by central differences.
    """

    support: Callable
    support_prime: Optional[Callable] = None
    smooth: bool = True

    def _h(self, thetas: np.ndarray) -> np.ndarray:
        return np.asarray(self.support(thetas), dtype=np.float64)

    def _hp(self, thetas: np.ndarray) -> np.ndarray:
        if self.support_prime is not None:
            return np.asarray(self.support_prime(thetas), dtype=np.float64)
        step = 1e-6
        return (self._h(thetas + step) - self._h(thetas - step)) / (2 * step)

    def boundary_points(self, thetas: np.ndarray) -> np.ndarray:
        h = self._h(thetas)
        hp = self._hp(thetas)
        cos, sin = np.cos(thetas), np.sin(thetas)
        return np.stack([h * cos - hp * sin, h * sin + hp * cos], axis=1)


def unit_circle_body() -> SupportFunctionBody:
    return SupportFunctionBody(
        support=lambda t: np.ones_like(np.asarray(t, dtype=np.float64)),
        support_prime=lambda t: np.zeros_like(np.asarray(t, dtype=np.float64)),
    )


def ellipse_body(a: float, b: float) -> SupportFunctionBody:
    """Axis-aligned ellipse with semi-axes (a, b)."""
    if a <= 0 or b <= 0:
        raise DomainError("semi-axes must be positive")

    def h(t):
        t = np.asarray(t, dtype=np.float64)
        return np.sqrt((a * np.cos(t)) ** 2 + (b * np.sin(t)) ** 2)

    def hp(t):
        t = np.asarray(t, dtype=np.float64)
        return (b * b - a * a) * np.sin(t) * np.cos(t) / h(t)

    return SupportFunctionBody(support=h, support_prime=hp)


@dataclass
class IlluminationReport:
    """Verification verdict with the least-covered witness point."""

    passed: bool
    m: int
    worst_point: tuple
    worst_count: int
    worst_margin: float
    samples: int

    def __bool__(self) -> bool:
        return self.passed


# --------------------------------------------------------------------------
# illumination predicates
# --------------------------------------------------------------------------

def _check_on_sphere(p, margin: float):
    norm_sq = float(sum(float(c) * float(c) for c in p))
    if abs(math.sqrt(norm_sq) - 1.0) > max(margin, 1e-9):
        raise PreconditionViolation("point is not on the unit sphere")


def illuminates_by_direction(body, p, u, tol: Tolerance = Tolerance()) -> bool:
    """Does moving from boundary point p along u enter the interior of body?

    Ball: strict <u, p> < 0 (exact for rational inputs, margin ``tol.margin``
    in float mode).  Polygon: exact sign tests against the outward normals
    adjacent to p.
    """
    if isinstance(u, Direction):
        u = u.coords
    if isinstance(body, Ball):
        if len(p) != body.dim or len(u) != body.dim:
            raise DomainError("dimension mismatch")
        if is_exact_coords(p) and is_exact_coords(u):
            if dot(frac_vec(p), frac_vec(p)) != 1:
                raise PreconditionViolation("point is not on the unit sphere")
            return dot(frac_vec(u), frac_vec(p)) < 0
        _check_on_sphere(p, tol.margin)
        uv = np.asarray([float(c) for c in u])
        pv = np.asarray([float(c) for c in p])
        return float(uv @ pv) / float(np.linalg.norm(uv)) < -tol.margin
    if isinstance(body, ConvexPolygon):
        kind, i = body.locate_boundary_point(p)
        uf = frac_vec(u)
        if kind == "edge":
            return dot(uf, body.outward_normal(i)) < 0
        return (
            dot(uf, body.outward_normal(i - 1)) < 0
            and dot(uf, body.outward_normal(i)) < 0
        )
    raise UnsupportedBody(f"unsupported body kind {type(body).__name__}")


def _segment_meets_polygon_interior(poly: ConvexPolygon, a, b) -> bool:
    """Does the closed segment a-b meet Int(poly)?  Exact rational clipping."""
    a, b = frac_vec(a), frac_vec(b)
    d = (b[0] - a[0], b[1] - a[1])
    lo, hi = Fraction(0), Fraction(1)
    for i in range(poly.n):
        nrm = poly.outward_normal(i)
        # interior side: <a + t d - v_i, nrm> < 0
        coeff = dot(d, nrm)
        rhs = dot(nrm, poly.vertices[i]) - dot(a, nrm)
        if coeff == 0:
            if rhs <= 0:
                return False
        elif coeff > 0:
            hi = min(hi, Fraction(rhs, coeff))
        else:
            lo = max(lo, Fraction(rhs, coeff))
        if lo >= hi:
            return False
    return True


def _segment_meets_ball_interior(a, b, dim_check=None) -> bool:
    """Does the closed segment a-b meet the open unit ball?"""
    if is_exact_coords(a) and is_exact_coords(b):
        a, b = frac_vec(a), frac_vec(b)
        d = tuple(y - x for x, y in zip(a, b))
        dd = dot(d, d)
        if dd == 0:
            return dot(a, a) < 1
        t = -Fraction(dot(a, d), dd)
        t = min(max(t, Fraction(0)), Fraction(1))
        closest = tuple(x + t * y for x, y in zip(a, d))
        return dot(closest, closest) < 1
    av = np.asarray([float(c) for c in a])
    bv = np.asarray([float(c) for c in b])
    d = bv - av
    dd = float(d @ d)
    t = 0.0 if dd == 0 else min(max(-float(av @ d) / dd, 0.0), 1.0)
    # endpoints taken verbatim when the clamp binds: a + t*d cancels badly
    # for far sources, and on-sphere endpoints must stay out of the verdict
    if t <= 0.0:
        closest = av
    elif t >= 1.0:
        closest = bv
    else:
        closest = av + t * d
    return float(np.linalg.norm(closest)) < 1.0 - 1e-12


def illuminates_by_point(body, source, p, tol: Tolerance = Tolerance()) -> bool:
    """Point-source illumination of boundary point p from source.

    True iff the ray from source through p enters the interior while the
    closed segment source-p stays out of it.
    """
    if isinstance(body, Ball):
        src_norm = sum(float(c) ** 2 for c in source)
        if src_norm <= 1:
            raise PreconditionViolation("source must be strictly outside the body")
        direction = tuple(as_fraction(y) - as_fraction(x) for x, y in zip(source, p)) \
            if is_exact_coords(source) and is_exact_coords(p) \
            else tuple(float(y) - float(x) for x, y in zip(source, p))
        if not illuminates_by_direction(body, p, direction, tol):
            return False
        return not _segment_meets_ball_interior(source, p)
    if isinstance(body, ConvexPolygon):
        src = frac_vec(source)
        if _point_in_polygon_interior(body, src):
            raise PreconditionViolation("source must be strictly outside the body")
        pf = frac_vec(p)
        direction = (pf[0] - src[0], pf[1] - src[1])
        if direction == (Fraction(0), Fraction(0)):
            raise PreconditionViolation("source coincides with boundary point")
        if not illuminates_by_direction(body, pf, direction):
            return False
        return not _segment_meets_polygon_interior(body, src, pf)
    raise UnsupportedBody(f"unsupported body kind {type(body).__name__}")


def _point_in_polygon_interior(poly: ConvexPolygon, p) -> bool:
    p = frac_vec(p)
    return all(
        dot(p, poly.outward_normal(i)) < dot(poly.vertices[i], poly.outward_normal(i))
        for i in range(poly.n)
    )


# --------------------------------------------------------------------------
# deterministic boundary sampling
# --------------------------------------------------------------------------

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def _kronecker_coords(n: int, dim: int) -> np.ndarray:
    """Rank-``dim`` Kronecker lattice in [0,1)^dim from the generalized
    golden ratio (unique positive root of x**(dim+1) = x + 1)."""
    phi = 2.0
    for _ in range(64):
        phi = (1 + phi) ** (1.0 / (dim + 1))
    alphas = np.array([phi ** -(k + 1) for k in range(dim)])
    idx = np.arange(n, dtype=np.float64)[:, None]
    return np.mod(0.5 + idx * alphas[None, :], 1.0)


def _sphere_s2(n: int) -> np.ndarray:
    k = np.arange(n, dtype=np.float64)
    z = 1.0 - (2.0 * k + 1.0) / n
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = k * _GOLDEN_ANGLE
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def _sphere_s3(u: np.ndarray) -> np.ndarray:
    """Uniform map [0,1)^3 -> S^3 via Hopf coordinates."""
    eta = np.arcsin(np.sqrt(u[:, 0]))
    xi1 = 2 * np.pi * u[:, 1]
    xi2 = 2 * np.pi * u[:, 2]
    c, s = np.cos(eta), np.sin(eta)
    return np.stack(
        [c * np.cos(xi1), c * np.sin(xi1), s * np.cos(xi2), s * np.sin(xi2)], axis=1
    )


def _s4_last_coord(u: np.ndarray) -> np.ndarray:
    # last coordinate of a uniform S^4 point has density (3/4)(1-t^2);
    # the CDF (2 + 3t - t^3)/4 = u inverts through the depressed cubic
    theta = np.arccos(np.clip(1.0 - 2.0 * u, -1.0, 1.0))
    return 2.0 * np.cos(theta / 3.0 - 2.0 * np.pi / 3.0)


def sphere_sample(dim: int, n: int) -> np.ndarray:
    """Deterministic quasi-uniform points on S^(dim-1); no RNG involved."""
    if n < 1:
        raise DomainError("sample count must be >= 1")
    if dim == 2:
        t = 2 * np.pi * np.arange(n, dtype=np.float64) / n
        return np.stack([np.cos(t), np.sin(t)], axis=1)
    if dim == 3:
        return _sphere_s2(n)
    if dim == 4:
        return _sphere_s3(_kronecker_coords(n, 3))
    if dim == 5:
        u = _kronecker_coords(n, 4)
        t = _s4_last_coord(u[:, 0])
        base = _sphere_s3(u[:, 1:])
        r = np.sqrt(np.maximum(0.0, 1.0 - t * t))
        return np.concatenate([r[:, None] * base, t[:, None]], axis=1)
    raise DomainError(f"sphere sampling not implemented for dimension {dim}")


def boundary_sample(body, n: int) -> np.ndarray:
    """Deterministic quasi-uniform boundary sample; identical bytes per input."""
    if n < 1:
        raise DomainError("sample count must be >= 1")
    if isinstance(body, Ball):
        return sphere_sample(body.dim, n)
    if isinstance(body, ConvexPolygon):
        verts = body.vertex_array()
        edge_vecs = np.roll(verts, -1, axis=0) - verts
        lengths = np.linalg.norm(edge_vecs, axis=1)
        cum = np.concatenate([[0.0], np.cumsum(lengths)])
        perimeter = cum[-1]
        s = perimeter * np.arange(n, dtype=np.float64) / n
        idx = np.minimum(np.searchsorted(cum, s, side="right") - 1, len(lengths) - 1)
        local = (s - cum[idx]) / lengths[idx]
        return verts[idx] + local[:, None] * edge_vecs[idx]
    raise UnsupportedBody(f"no boundary sampler for {type(body).__name__}")


# --------------------------------------------------------------------------
# m-fold verification
# --------------------------------------------------------------------------

@dataclass
class SampleSet:
    """Boundary samples prepared for the counting kernel.

    ``normals`` are unit vectors, ``offsets`` shift the strictness
    threshold per point (0 for smooth boundary samples; cos of the
    tangent-cone half-angle for cap-body apexes).
    """

    points: np.ndarray
    normals: np.ndarray
    offsets: np.ndarray


def _worst_index(points: np.ndarray, counts: np.ndarray) -> int:
    worst = counts.min()
    candidates = np.flatnonzero(counts == worst)
    if len(candidates) == 1:
        return int(candidates[0])
    rows = points[candidates]
    order = np.lexsort(rows.T[::-1])
    return int(candidates[order[0]])


def _kth_largest_margin(margins: np.ndarray, mults: np.ndarray, k: int) -> float:
    expanded = np.repeat(margins, mults)
    expanded.sort()
    k = min(k, len(expanded))
    return float(expanded[-k])


def verify_samples(
    samples: SampleSet,
    multiset: DirectionMultiset,
    m: int,
    tol: Tolerance,
    threads: int = 1,
) -> IlluminationReport:
    """Count robustly illuminating directions per sample and report the worst."""
    units, mults = multiset.as_arrays()
    pts, normals, offsets = samples.points, samples.normals, samples.offsets
    if threads > 1 and len(pts) > 1:
        bounds = np.linspace(0, len(pts), threads + 1, dtype=int)
        chunks = [(bounds[i], bounds[i + 1]) for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(
                    lambda c: _kernels.count_illuminating(
                        normals[c[0]:c[1]], offsets[c[0]:c[1]], units, mults, tol.margin
                    ),
                    chunks,
                )
            )
        counts = np.concatenate(parts)
    else:
        counts = _kernels.count_illuminating(normals, offsets, units, mults, tol.margin)
    wi = _worst_index(pts, counts)
    margins = -(units @ normals[wi]) - offsets[wi]
    return IlluminationReport(
        passed=bool(counts[wi] >= m),
        m=m,
        worst_point=tuple(float(c) for c in pts[wi]),
        worst_count=int(counts[wi]),
        worst_margin=_kth_largest_margin(margins, mults, m),
        samples=len(pts),
    )


def _verify_polygon_exact(
    poly: ConvexPolygon, multiset: DirectionMultiset, m: int
) -> IlluminationReport:
    """Exact verdict: a vertex is illuminated by u iff both adjacent outward
    normals have strictly negative dot with u.  Vertex coverage implies edge
    coverage, so vertices decide the verdict."""
    n = poly.n
    counts = []
    margins_per_vertex = []
    for i in range(n):
        n_prev = poly.outward_normal(i - 1)
        n_cur = poly.outward_normal(i)
        np_f = np.asarray([float(n_prev[0]), float(n_prev[1])])
        nc_f = np.asarray([float(n_cur[0]), float(n_cur[1])])
        np_f /= np.linalg.norm(np_f)
        nc_f /= np.linalg.norm(nc_f)
        count = 0
        vertex_margins = []
        for d, mult in multiset.entries:
            uf = frac_vec(d.coords)
            if dot(uf, n_prev) < 0 and dot(uf, n_cur) < 0:
                count += mult
            u = d.unit()
            vertex_margins.append(min(-float(u @ np_f), -float(u @ nc_f)))
        counts.append(count)
        margins_per_vertex.append(np.asarray(vertex_margins))
    counts = np.asarray(counts, dtype=np.int64)
    pts = poly.vertex_array()
    wi = _worst_index(pts, counts)
    _, mults = multiset.as_arrays()
    return IlluminationReport(
        passed=bool(counts.min() >= m),
        m=m,
        worst_point=tuple(poly.vertices[wi]),
        worst_count=int(counts[wi]),
        worst_margin=_kth_largest_margin(margins_per_vertex[wi], mults, m),
        samples=n,
    )


def verify_mfold(
    body,
    multiset: DirectionMultiset,
    m: int,
    tol: Tolerance = Tolerance(),
    threads: int = 1,
) -> IlluminationReport:
    """m-fold illumination verdict for a polygon (exact), ball, smooth 2D
    body, or cap body of a ball (sampled with strictness margin)."""
    if m < 1:
        raise DomainError("m must be >= 1")
    body_dim = getattr(body, "dim", 2)
    if multiset.dim != body_dim:
        raise DomainError(
            f"direction dimension {multiset.dim} != body dimension {body_dim}"
        )
    if isinstance(body, ConvexPolygon):
        return _verify_polygon_exact(body, multiset, m)
    if isinstance(body, Ball):
        n = resolve_samples(tol, body.dim)
        pts = sphere_sample(body.dim, n)
        samples = SampleSet(points=pts, normals=pts, offsets=np.zeros(len(pts)))
        return verify_samples(samples, multiset, m, tol, threads)
    if isinstance(body, SupportFunctionBody):
        n = tol.samples if tol.samples is not None else DEFAULT_SAMPLES[2]
        thetas = 2 * np.pi * np.arange(n, dtype=np.float64) / n
        pts = body.boundary_points(thetas)
        normals = np.stack([np.cos(thetas), np.sin(thetas)], axis=1)
        samples = SampleSet(points=pts, normals=normals, offsets=np.zeros(n))
        return verify_samples(samples, multiset, m, tol, threads)
    from .capbody import CapBodySpec, validate_cap_body  # deferred: capbody builds on this module

    if isinstance(body, CapBodySpec):
        if not validate_cap_body(body):
            raise PreconditionViolation(
                "cap body is invalid: an apex pair's segment misses the ball"
            )
        samples = body.boundary_sample_set(resolve_samples(tol, body.dim))
        return verify_samples(samples, multiset, m, tol, threads)
    raise UnsupportedBody(f"cannot verify body of kind {type(body).__name__}")
