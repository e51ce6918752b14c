"""Versioned JSON encodings (schema v1) for the CLI surfaces.

Exact rational coordinates travel as "num/den" strings so they round-trip
without loss; float coordinates stay JSON numbers.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import DomainError
from .geometry import ConvexPolygon, Direction, DirectionMultiset, IlluminationReport

SCHEMA = "v1"


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _check_schema(doc: dict, what: str):
    if not isinstance(doc, dict):
        raise DomainError(f"{what}: expected a JSON object")
    if doc.get("schema", SCHEMA) != SCHEMA:
        raise DomainError(f"{what}: unsupported schema {doc.get('schema')!r}")


def scalar_to_json(c):
    if isinstance(c, Fraction):
        return str(c)
    if isinstance(c, int):
        return str(Fraction(c))
    return float(c)


def scalar_from_json(c):
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, bool):
        raise DomainError("booleans are not coordinates")
    if isinstance(c, int):
        return Fraction(c)
    return float(c)


def polygon_to_json(poly: ConvexPolygon) -> dict:
    return {
        "schema": SCHEMA,
        "vertices": [[str(x), str(y)] for x, y in poly.vertices],
    }


def polygon_from_json(doc: dict) -> ConvexPolygon:
    _check_schema(doc, "polygon")
    try:
        vertices = [tuple(Fraction(c) for c in v) for v in doc["vertices"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed polygon JSON: {exc}") from exc
    return ConvexPolygon(vertices)


def multiset_to_json(multiset: DirectionMultiset) -> dict:
    return {
        "schema": SCHEMA,
        "entries": [
            {"dir": [scalar_to_json(c) for c in d.coords], "mult": mult}
            for d, mult in multiset.entries
        ],
    }


def multiset_from_json(doc: dict) -> DirectionMultiset:
    _check_schema(doc, "direction multiset")
    try:
        entries = [
            (
                Direction([scalar_from_json(c) for c in e["dir"]]),
                int(e.get("mult", 1)),
            )
            for e in doc["entries"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed direction multiset JSON: {exc}") from exc
    return DirectionMultiset(entries)


def report_to_json(report: IlluminationReport) -> dict:
    return {
        "schema": SCHEMA,
        "pass": report.passed,
        "m": report.m,
        "worst_point": [scalar_to_json(c) for c in report.worst_point],
        "worst_count": report.worst_count,
        "worst_margin": float(report.worst_margin),
        "samples": report.samples,
    }


def capbody_to_json(spec) -> dict:
    return {
        "schema": SCHEMA,
        "dim": spec.dim,
        "apexes": [[scalar_to_json(c) for c in a] for a in spec.apexes],
    }


def capbody_from_json(doc: dict):
    from .capbody import CapBodySpec

    _check_schema(doc, "cap body")
    try:
        dim = int(doc["dim"])
        apexes = [tuple(scalar_from_json(c) for c in a) for a in doc["apexes"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed cap body JSON: {exc}") from exc
    return CapBodySpec(dim=dim, apexes=apexes)


def solution_to_json(solution) -> dict:
    """Piercing solution with multiplicities expanded into the list."""
    directions = []
    for d, (_, mult) in zip(solution.directions, solution.slots):
        directions.extend([[str(d[0]), str(d[1])]] * mult)
    return {
        "schema": SCHEMA,
        "optimum": solution.size,
        "m": solution.m,
        "directions": directions,
        "certificate": solution.certificate,
    }


def format_angle(value: float, pi_fraction: Fraction | None = None) -> str:
    """Angles print as exact rational multiples of pi where representable
    (caller-supplied or detected to full float precision), otherwise as
    17-significant-digit decimals."""
    import math

    if pi_fraction is None:
        candidate = Fraction(value / math.pi).limit_denominator(1000)
        if candidate != 0 and abs(float(candidate) * math.pi - value) < 4e-16:
            pi_fraction = candidate
    if pi_fraction is not None:
        return f"{pi_fraction}*pi"
    return f"{value:.17g}"
