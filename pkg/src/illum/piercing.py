"""Optimal m-fold piercing of open circular arcs with exact certificates.

Positions are restricted to canonical "infinitesimally CCW past an arc
start" slots: sliding any piercing point clockwise to the nearest start
keeps every arc it was in, so an optimal canonical solution always
exists.  Membership of the slot past start s in the open arc (a, b) is
the exact half-open test s in [a, b), decided by orientation signs only.

The optimum is found by a cut-and-unroll feasibility DP: fix a total T,
cut the circle before the anchor slot, and solve the resulting
difference-constraint system on prefix sums by longest paths.  An
infeasible T-1 yields a positive cycle whose arcs form a chain wrapping
the circle w times; ceil(k*m/w) for its k arcs is a matching lower
bound, reported as the optimality certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np

from .errors import DomainError, GeometryInternalError
from .geometry import (
    Direction,
    DirectionMultiset,
    angle_sort_key,
    cross2,
    dot,
    frac_vec,
    in_halfopen_arc,
    in_open_arc,
)


@dataclass(frozen=True)
class Arc:
    """Open CCW arc on the circle of directions, exact rational endpoints."""

    start: tuple[Fraction, Fraction]
    end: tuple[Fraction, Fraction]

    def __post_init__(self):
        start, end = frac_vec(self.start), frac_vec(self.end)
        if start == (0, 0) or end == (0, 0):
            raise DomainError("arc endpoints must be nonzero vectors")
        if cross2(start, end) == 0 and dot(start, end) > 0:
            raise DomainError("arc endpoints coincide (length 0 or full circle)")
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "end", end)

    def contains_slot(self, s) -> bool:
        """Does this open arc contain the slot just CCW past direction s?"""
        return in_halfopen_arc(self.start, self.end, s)

    def contains_direction(self, u) -> bool:
        """Strict interior membership of a concrete direction."""
        return in_open_arc(self.start, self.end, u)

    def length(self) -> float:
        """Arc length in radians (float, for reporting only)."""
        sx, sy = float(self.start[0]), float(self.start[1])
        ex, ey = float(self.end[0]), float(self.end[1])
        ang = math.atan2(sx * ey - sy * ex, sx * ex + sy * ey)
        return ang % (2 * math.pi)


@dataclass
class ArcSystem:
    """Arcs to pierce, each at least ``demand`` times."""

    arcs: list[Arc]
    demand: int = 1

    def __post_init__(self):
        if not self.arcs:
            raise DomainError("arc system must be nonempty")
        if self.demand < 1:
            raise DomainError("demand must be >= 1")

    @property
    def n(self) -> int:
        return len(self.arcs)


@dataclass
class PiercingSolution:
    """Optimal multiset of slots with exact concrete directions.

    ``slots`` holds (arc index owning the start, multiplicity); the
    matching entries of ``directions`` are exact rational vectors strictly
    inside every arc the slot pierces.  ``certificate`` is the chain lower
    bound proving optimality.
    """

    size: int
    m: int
    slots: list[tuple[int, int]]
    directions: list[tuple[Fraction, Fraction]]
    certificate: dict

    def as_direction_multiset(self) -> DirectionMultiset:
        return DirectionMultiset(
            [(Direction(d), mult) for d, (_, mult) in zip(self.directions, self.slots)]
        )


def _slot_order(system: ArcSystem) -> list[int]:
    starts = [system.arcs[i].start for i in range(system.n)]
    return sorted(range(system.n), key=lambda i: angle_sort_key(starts[i]))


def _membership(system: ArcSystem, order: list[int]) -> list[list[bool]]:
    """member[i][k]: arc i contains the slot at sorted position k."""
    return [
        [arc.contains_slot(system.arcs[order[k]].start) for k in range(system.n)]
        for arc in system.arcs
    ]


def _intervals(member: list[list[bool]]) -> list[tuple[int, int]]:
    """Cyclic position interval [l, r] covered by each arc (l may exceed r)."""
    n = len(member[0])
    out = []
    for i, row in enumerate(member):
        count = sum(row)
        if count == 0:
            raise GeometryInternalError("arc contains no canonical slot")
        if count == n:
            out.append((0, n - 1))
            continue
        l = next(k for k in range(n) if row[k] and not row[(k - 1) % n])
        if not all(row[(l + j) % n] for j in range(count)):
            raise GeometryInternalError("arc slot membership is not contiguous")
        out.append((l, (l + count - 1) % n))
    return out


def _feasible(intervals, n, m, total):
    """Longest-path feasibility for the fixed-total unrolled system.

    Nodes 0..n are prefix sums y_{-1}..y_{n-1} anchored at y_{-1}=0.
    Returns (True, slot multiplicities) or (False, positive-cycle edges).
    """
    edges = [(j, j + 1, 0, ("mono", j)) for j in range(n)]
    for i, (l, r) in enumerate(intervals):
        wrap = l > r
        w = m - total if wrap else m
        edges.append((l, r + 1, w, ("arc", i, wrap)))
    edges.append((n, 0, -total, ("close",)))

    dist = [-(10 ** 18)] * (n + 1)
    pred = [None] * (n + 1)
    dist[0] = 0

    def relax_pass():
        changed = None
        for a, b, w, label in edges:
            if dist[a] + w > dist[b]:
                dist[b] = dist[a] + w
                pred[b] = (a, label)
                changed = b
        return changed

    changed_node = None
    for _ in range(n + 1):
        changed_node = relax_pass()
        if changed_node is None:
            break
    if changed_node is not None:
        changed_node = relax_pass()
    if changed_node is not None:
        # keep pumping so every predecessor chain near the witness feeds from
        # the positive cycle, then walk back onto it and collect its edges
        for _ in range(2 * (n + 2)):
            relax_pass()
        v = changed_node
        for _ in range(n + 2):
            if pred[v] is None:
                raise GeometryInternalError("positive-cycle walk escaped to source")
            v = pred[v][0]
        cycle_edges, seen, u = [], set(), v
        while u not in seen:
            seen.add(u)
            if pred[u] is None:
                raise GeometryInternalError("positive-cycle walk escaped to source")
            a, label = pred[u]
            cycle_edges.append(label)
            u = a
        cycle_edges.reverse()
        return False, cycle_edges
    x = [dist[j + 1] - dist[j] for j in range(n)]
    x[n - 1] += total - dist[n]
    return True, x


def _trivial_certificate(m: int) -> dict:
    return {"anchor_arc": 0, "chain": [0], "wraps": 1, "bound": m}


def _certificate_from_cycle(cycle_edges, m: int) -> dict:
    chain = [lab[1] for lab in cycle_edges if lab[0] == "arc"]
    wraps = sum(1 for lab in cycle_edges if lab[0] == "close") + sum(
        1 for lab in cycle_edges if lab[0] == "arc" and lab[2]
    )
    if not chain or wraps == 0:
        raise GeometryInternalError("degenerate infeasibility cycle")
    return {
        "anchor_arc": chain[0],
        "chain": chain,
        "wraps": wraps,
        "bound": math.ceil(len(chain) * m / wraps),
    }


def _concretize_slot(system: ArcSystem, arc_idx: int, covering: list[int]):
    """Exact rational direction strictly inside every arc covering the slot.

    Rotates the start vector CCW by the rational rotation of parameter t
    (angle 2*atan(t)), halving t until every strict membership holds.
    """
    x, y = system.arcs[arc_idx].start
    t = Fraction(1, 4)
    for _ in range(256):
        w = ((1 - t * t) * x - 2 * t * y, 2 * t * x + (1 - t * t) * y)
        if all(system.arcs[i].contains_direction(w) for i in covering):
            return w
        t /= 2
    raise GeometryInternalError("failed to concretize a piercing slot")


def min_mfold_pierce(system: ArcSystem, m: int | None = None) -> PiercingSolution:
    """Provably optimal multiset piercing every arc at least m times."""
    m = system.demand if m is None else m
    if m < 1:
        raise DomainError("demand must be >= 1")
    n = system.n
    order = _slot_order(system)
    member = _membership(system, order)
    intervals = _intervals(member)

    certificate = None
    total = m
    while total <= m * n:
        ok, payload = _feasible(intervals, n, m, total)
        if ok:
            if certificate is None:
                certificate = _trivial_certificate(m)
            if certificate["bound"] != total:
                raise GeometryInternalError(
                    f"certificate bound {certificate['bound']} != optimum {total}"
                )
            slots, dirs = [], []
            for k, mult in enumerate(payload):
                if mult <= 0:
                    continue
                arc_idx = order[k]
                covering = [i for i in range(n) if member[i][k]]
                slots.append((arc_idx, mult))
                dirs.append(_concretize_slot(system, arc_idx, covering))
            return PiercingSolution(
                size=total, m=m, slots=slots, directions=dirs, certificate=certificate
            )
        certificate = _certificate_from_cycle(payload, m)
        # the cycle stays positive for every total below its bound, so the
        # scan can jump there directly
        total = max(total + 1, certificate["bound"])
    raise GeometryInternalError("piercing search exceeded the m*n upper bound")


def certificate_lower_bound(system: ArcSystem, certificate: dict, m: int) -> int:
    """Independent re-derivation of the chain certificate's lower bound.

    Every circle point lies in at most ``cover`` chain arcs (coverage is
    piecewise constant, changing only at arc endpoints, so probing the
    slots just past every endpoint is exhaustive); each chain arc needs m
    points, hence any solution has at least ceil(k*m/cover) points.
    """
    chain = certificate["chain"]
    probes = [a.start for a in system.arcs] + [a.end for a in system.arcs]
    cover = max(
        sum(1 for i in chain if system.arcs[i].contains_slot(p)) for p in probes
    )
    if cover == 0:
        raise GeometryInternalError("certificate chain covers nothing")
    return math.ceil(len(chain) * m / cover)


def verify_piercing(system: ArcSystem, solution: PiercingSolution, m: int) -> bool:
    """Exact feasibility re-check of the concrete directions."""
    for arc in system.arcs:
        covered = sum(
            mult
            for d, (_, mult) in zip(solution.directions, solution.slots)
            if arc.contains_direction(d)
        )
        if covered < m:
            return False
    return True


def min_mfold_pierce_bruteforce(system: ArcSystem, m: int) -> int:
    """Exhaustive search over canonical slot multisets; cross-checks the DP.

    Guarded to small instances: n <= 9, m <= 4.
    """
    n = system.n
    if n > 9 or m > 4:
        raise DomainError("brute force is guarded to n <= 9, m <= 4")
    order = _slot_order(system)
    member = np.array(_membership(system, order), dtype=np.int64)
    for size in range(m, m * n + 1):
        combos = list(combinations_with_replacement(range(n), size))
        counts = np.zeros((len(combos), n), dtype=np.int64)
        for row, combo in enumerate(combos):
            for k in combo:
                counts[row, k] += 1
        coverage = counts @ member.T
        if bool((coverage >= m).all(axis=1).any()):
            return size
    raise GeometryInternalError("brute force found no feasible multiset")
