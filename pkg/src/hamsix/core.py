"""Fixed-point data of a Hamiltonian circle action with isolated fixed points.

Only combinatorial data is carried: the moment map value of each fixed point
and a multiset of isotropy edges.  An edge ``(lower, upper, w)`` contributes the
weight ``+w`` at the lower point and ``-w`` at the upper one, so the weight
multiset of every point is derived from the edges rather than stored.

Moment values are exact integers.  Callers are expected to normalise the
symplectic class to a primitive integral class; :func:`normalize` fixes the
remaining translation freedom by putting the minimum at zero.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Iterable, Sequence

__all__ = [
    "FixedPoint",
    "IsotropyEdge",
    "FixedPointData",
    "WeightProfile",
    "InvalidData",
    "NonMonotoneMoment",
    "WrongEdgeCount",
    "DivisibilityViolation",
    "IndexPatternViolation",
    "DataFormatError",
    "build",
    "from_moments",
    "validate",
    "structural_violations",
    "weights_of",
    "profile",
    "reverse",
    "translate",
    "normalize",
    "to_dict",
    "from_dict",
    "to_json",
    "from_json",
]

_INT64_MIN, _INT64_MAX = -(2**63), 2**63 - 1


class InvalidData(ValueError):
    """A candidate violates a structural invariant of fixed-point data."""

    kind = "structural"

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.detail = detail

    def to_dict(self) -> dict:
        return {"kind": self.kind, "message": str(self), **self.detail}


class NonMonotoneMoment(InvalidData):
    kind = "ordering"


class WrongEdgeCount(InvalidData):
    kind = "edge_count"


class DivisibilityViolation(InvalidData):
    kind = "divisibility"


class IndexPatternViolation(InvalidData):
    kind = "index_pattern"


class DataFormatError(ValueError):
    """Malformed serialized input.  ``location`` names where parsing failed."""

    def __init__(self, message: str, location: str):
        super().__init__(f"{location}: {message}")
        self.location = location


@dataclass(frozen=True, order=True)
class FixedPoint:
    id: int
    moment: int


@dataclass(frozen=True, order=True)
class IsotropyEdge:
    lower: int
    upper: int
    weight: int


@dataclass(frozen=True)
class FixedPointData:
    """Fixed points (ordered by moment value) plus the isotropy edge multiset.

    Constructing this directly does *not* validate; use :func:`build` for that.
    Edges are kept in canonical lexicographic order, which makes dataclass
    equality and hashing coincide with multiset equality.
    """

    half_dimension: int
    points: tuple[FixedPoint, ...]
    edges: tuple[IsotropyEdge, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @property
    def n(self) -> int:
        return self.half_dimension

    @property
    def moments(self) -> tuple[int, ...]:
        return tuple(p.moment for p in self.points)

    @cached_property
    def weights(self) -> tuple[tuple[int, ...], ...]:
        """Signed weight multiset of every point, each sorted ascending."""
        per_point: list[list[int]] = [[] for _ in self.points]
        for e in self.edges:
            per_point[e.lower].append(e.weight)
            per_point[e.upper].append(-e.weight)
        return tuple(tuple(sorted(ws)) for ws in per_point)

    @cached_property
    def indices(self) -> tuple[int, ...]:
        """Morse index of every point (twice its number of negative weights)."""
        return tuple(2 * sum(1 for w in ws if w < 0) for ws in self.weights)

    @property
    def gaps(self) -> tuple[int, ...]:
        m = self.moments
        return tuple(m[i + 1] - m[i] for i in range(len(m) - 1))


@dataclass(frozen=True)
class WeightProfile:
    point: int
    weights: tuple[int, ...]
    lambda_minus: int
    lambda_full: int
    gamma: int
    sigma2: int
    index: int


def _points_from(points: Iterable) -> tuple[FixedPoint, ...]:
    out = []
    for p in points:
        out.append(p if isinstance(p, FixedPoint) else FixedPoint(*p))
    return tuple(out)


def _edges_from(edges: Iterable) -> tuple[IsotropyEdge, ...]:
    out = []
    for e in edges:
        out.append(e if isinstance(e, IsotropyEdge) else IsotropyEdge(*e))
    return tuple(out)


def structural_violations(data: FixedPointData) -> list[InvalidData]:
    """Every structural defect of ``data``, in a fixed order.

    Checks ids, moment ordering, edge orientation, edge and degree counts,
    divisibility of moment gaps by edge weights, and the index pattern
    (point ``i`` carries exactly ``i`` negative weights).
    """
    n = data.half_dimension
    problems: list[InvalidData] = []
    if n < 1:
        return [WrongEdgeCount(f"half_dimension must be >= 1, got {n}")]
    if len(data.points) != n + 1:
        return [WrongEdgeCount(f"expected {n + 1} fixed points, got {len(data.points)}",
                               expected=n + 1, found=len(data.points))]
    ids = [p.id for p in data.points]
    if ids != list(range(n + 1)):
        return [InvalidData(f"point ids must be 0..{n} in order, got {ids}")]

    m = data.moments
    for i in range(n):
        if not m[i] < m[i + 1]:
            problems.append(NonMonotoneMoment(
                f"moment values not strictly increasing at P{i}, P{i + 1}",
                points=[i, i + 1], moments=[m[i], m[i + 1]]))

    edges_ok = True
    for e in data.edges:
        if not (0 <= e.lower <= n and 0 <= e.upper <= n):
            problems.append(InvalidData(f"edge {e} refers to a missing point"))
            edges_ok = False
        elif e.lower >= e.upper:
            problems.append(NonMonotoneMoment(
                f"edge lower end P{e.lower} is not below upper end P{e.upper}",
                edge=[e.lower, e.upper, e.weight]))
            edges_ok = False
        if e.weight <= 0:
            problems.append(InvalidData(f"edge weight must be positive: {e}",
                                        edge=[e.lower, e.upper, e.weight]))
            edges_ok = False
    if not edges_ok:
        return problems

    expected = n * (n + 1) // 2
    if len(data.edges) != expected:
        problems.append(WrongEdgeCount(f"expected {expected} edges, got {len(data.edges)}",
                                       expected=expected, found=len(data.edges)))
    degree = Counter()
    for e in data.edges:
        degree[e.lower] += 1
        degree[e.upper] += 1
    for i in range(n + 1):
        if degree[i] != n:
            problems.append(WrongEdgeCount(f"P{i} has {degree[i]} weights, expected {n}",
                                           point=i, expected=n, found=degree[i]))

    for e in data.edges:
        gap = m[e.upper] - m[e.lower]
        if gap % e.weight:
            problems.append(DivisibilityViolation(
                f"weight {e.weight} does not divide moment gap {gap} between "
                f"P{e.lower} and P{e.upper}",
                edge=[e.lower, e.upper, e.weight], gap=gap))

    for i, idx in enumerate(data.indices):
        if idx != 2 * i:
            problems.append(IndexPatternViolation(
                f"P{i} has Morse index {idx}, expected {2 * i}",
                point=i, index=idx, expected=2 * i))
    return problems


def validate(data: FixedPointData) -> FixedPointData:
    problems = structural_violations(data)
    if problems:
        raise problems[0]
    return data


def build(points: Sequence, edges: Iterable, half_dimension: int = 3) -> FixedPointData:
    """Construct validated fixed-point data.

    ``points`` holds ``(id, moment)`` pairs or :class:`FixedPoint` objects,
    ``edges`` holds ``(lower, upper, weight)`` triples or :class:`IsotropyEdge`.
    Raises the first :class:`InvalidData` subclass found.
    """
    data = FixedPointData(half_dimension, _points_from(points), _edges_from(edges))
    return validate(data)


def from_moments(moments: Sequence[int], edges: Iterable, half_dimension: int | None = None,
                 check: bool = True) -> FixedPointData:
    """Shorthand: points are numbered in the order their moments are given."""
    n = len(moments) - 1 if half_dimension is None else half_dimension
    data = FixedPointData(n, tuple(FixedPoint(i, int(v)) for i, v in enumerate(moments)),
                          _edges_from(edges))
    return validate(data) if check else data


def weights_of(data: FixedPointData, i: int) -> tuple[int, ...]:
    return data.weights[i]


def _sigma2(ws: Sequence[int]) -> int:
    s = sum(ws)
    return (s * s - sum(w * w for w in ws)) // 2


def profile(data: FixedPointData) -> list[WeightProfile]:
    out = []
    for i, ws in enumerate(data.weights):
        out.append(WeightProfile(
            point=i,
            weights=ws,
            lambda_minus=prod(w for w in ws if w < 0),
            lambda_full=prod(ws),
            gamma=sum(ws),
            sigma2=_sigma2(ws),
            index=data.indices[i],
        ))
    return out


def reverse(data: FixedPointData) -> FixedPointData:
    """Data of the same action with moment map ``-phi``.

    Point ``i`` becomes point ``n - i``.  No translation is applied, so
    ``reverse(reverse(d)) == d`` exactly.
    """
    n = data.half_dimension
    pts = tuple(FixedPoint(n - p.id, -p.moment) for p in reversed(data.points))
    edges = tuple(IsotropyEdge(n - e.upper, n - e.lower, e.weight) for e in data.edges)
    return FixedPointData(n, pts, edges)


def translate(data: FixedPointData, shift: int) -> FixedPointData:
    pts = tuple(FixedPoint(p.id, p.moment + shift) for p in data.points)
    return FixedPointData(data.half_dimension, pts, data.edges)


def normalize(data: FixedPointData) -> FixedPointData:
    """Translate so that the lowest fixed point sits at moment 0."""
    if not data.points or data.points[0].moment == 0:
        return data
    return translate(data, -data.points[0].moment)


# --- serialization -------------------------------------------------------

def _emit_int(v: int):
    return v if _INT64_MIN <= v <= _INT64_MAX else str(v)


def _parse_int(v, location: str) -> int:
    if isinstance(v, bool):
        raise DataFormatError("expected an integer, got a boolean", location)
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        s = v.strip()
        body = s[1:] if s[:1] in "+-" else s
        if body.isdigit() and body.isascii():
            return int(s)
    raise DataFormatError(f"expected an integer, got {v!r}", location)


def to_dict(data: FixedPointData) -> dict:
    return {
        "half_dimension": data.half_dimension,
        "points": [{"id": p.id, "moment": _emit_int(p.moment)} for p in data.points],
        "edges": [{"lower": e.lower, "upper": e.upper, "weight": _emit_int(e.weight)}
                  for e in data.edges],
    }


def _field(obj: dict, key: str, location: str):
    if not isinstance(obj, dict):
        raise DataFormatError("expected an object", location)
    if key not in obj:
        raise DataFormatError(f"missing field {key!r}", location)
    return obj[key]


def from_dict(obj, check: bool = True) -> FixedPointData:
    """Inverse of :func:`to_dict`.  Schema errors raise :class:`DataFormatError`."""
    n = _parse_int(_field(obj, "half_dimension", "$"), "$.half_dimension")
    raw_points = _field(obj, "points", "$")
    raw_edges = _field(obj, "edges", "$")
    if not isinstance(raw_points, list):
        raise DataFormatError("expected a list", "$.points")
    if not isinstance(raw_edges, list):
        raise DataFormatError("expected a list", "$.edges")
    points = []
    for k, p in enumerate(raw_points):
        loc = f"$.points[{k}]"
        points.append(FixedPoint(_parse_int(_field(p, "id", loc), loc + ".id"),
                                 _parse_int(_field(p, "moment", loc), loc + ".moment")))
    edges = []
    for k, e in enumerate(raw_edges):
        loc = f"$.edges[{k}]"
        edges.append(IsotropyEdge(*(_parse_int(_field(e, key, loc), f"{loc}.{key}")
                                    for key in ("lower", "upper", "weight"))))
    data = FixedPointData(n, tuple(points), tuple(edges))
    return validate(data) if check else data


def to_json(data: FixedPointData) -> str:
    return json.dumps(to_dict(data), separators=(",", ":"))


def from_json(text: str, check: bool = True) -> FixedPointData:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DataFormatError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    return from_dict(obj, check=check)
