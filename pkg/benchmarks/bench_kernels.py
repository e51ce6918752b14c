#!/usr/bin/env python3
"""Throughput comparison of the numba and numpy kernel backends.

The two hot loops dominating verification runtime are benchmarked on
realistic shapes: direction counting over sphere samples (the m-fold
verifier) and m-fold coverage counting over a solid-ball grid (the
illumination-to-cover search).

Usage:
    python benchmarks/bench_kernels.py [--points 1000000] [--repeats 5]
"""

import argparse
import time

import numpy as np

from illum import _kernels
from illum.balls import b3_direction_multiset, ball_grid
from illum.geometry import sphere_sample


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=1_000_000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    pts = sphere_sample(3, args.points)
    offsets = np.zeros(len(pts))
    units, mults = b3_direction_multiset(4).as_arrays()
    grid = ball_grid(3, 0.02)
    centers = -0.1 * units

    cases = {
        f"count_illuminating ({args.points} pts x {len(units)} dirs)": (
            lambda: _kernels.count_illuminating(pts, offsets, units, mults, 1e-8)
        ),
        f"count_covering ({len(grid)} grid pts x {len(centers)} balls)": (
            lambda: _kernels.count_covering(grid, centers, 1e-6)
        ),
    }

    print(f"{'kernel':<52} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for name, fn in cases.items():
        timings = {}
        for backend in ("numpy", "numba"):
            _kernels.set_backend(backend)
            fn()  # warm up (JIT compile / cache touch)
            timings[backend] = _time(fn, args.repeats)
        ratio = timings["numpy"] / timings["numba"]
        print(
            f"{name:<52} {timings['numpy'] * 1e3:>8.1f}ms {timings['numba'] * 1e3:>8.1f}ms"
            f" {ratio:>7.2f}x"
        )


if __name__ == "__main__":
    main()
