import numpy as np
import pytest

from illum.errors import DomainError
from illum.geometry import ConvexPolygon, angle_sort_key


def random_convex_polygon(rng, n: int, coord_range: int = 12) -> ConvexPolygon:
    """Random strictly convex lattice polygon with exactly n vertices.

    Samples n-1 integer edge vectors, closes the cycle with their negated
    sum, sorts all edges CCW by exact angle, and retries until the vertex
    cycle validates (distinct directions, every turn below pi).
    """
    for _ in range(5000):
        vecs = rng.integers(-coord_range, coord_range + 1, size=(n - 1, 2))
        edges = [tuple(int(c) for c in v) for v in vecs]
        closer = (-sum(e[0] for e in edges), -sum(e[1] for e in edges))
        edges.append(closer)
        if any(e == (0, 0) for e in edges):
            continue
        edges.sort(key=angle_sort_key)
        verts = []
        x = y = 0
        for ex, ey in edges[:-1]:
            verts.append((x, y))
            x, y = x + ex, y + ey
        verts.append((x, y))
        try:
            return ConvexPolygon(verts)
        except DomainError:
            continue
    raise RuntimeError(f"failed to sample a convex {n}-gon")


def random_direction_2d(rng, coord_range: int = 40):
    while True:
        v = (int(rng.integers(-coord_range, coord_range + 1)),
             int(rng.integers(-coord_range, coord_range + 1)))
        if v != (0, 0):
            return v


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the numba kernels once so timed criteria measure math, not JIT."""
    from illum import Ball, DirectionMultiset, Tolerance, verify_mfold
    from illum.balls import ball_grid, cover_min_count

    tiny = DirectionMultiset.from_vectors([(0.0, 0.0, -1.0), (0.0, 0.0, 1.0), (1.0, 0.0, 0.0)])
    verify_mfold(Ball(3), tiny, 1, Tolerance(samples=64))
    cover_min_count(ball_grid(2, 0.5), np.zeros((1, 2)), 1e-6)
