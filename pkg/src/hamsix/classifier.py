"""Bounded exhaustive search over 4-point data in dimension 6, and family matching.

Candidates are generated per edge-multigraph type.  With moment gaps
``(a, b, c)`` the edges ``P0P1`` and ``P2P3`` carry ``a`` and ``c``; every
other edge weight is a moment gap divided by one of its divisors.  Each
candidate is pushed through the constraint pipeline and the first failing
constraint is tallied, so the rejection histogram shows which constraint
removes which candidates.
"""

from __future__ import annotations

import enum
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from . import catalog
from .checks import VerificationReport, verify_all
from .core import FixedPointData, from_moments, normalize, to_dict
from .invariants import (InvariantError, NonIntegralCoefficient, check_chern_restrictions,
                         check_poincare_duality, chern_numbers, duality_holds)

__all__ = [
    "GraphType",
    "Family",
    "FamilyMatch",
    "SearchParameters",
    "EnumerationResult",
    "Enumeration",
    "UnknownGraphShape",
    "graph_type",
    "match_family",
    "candidates",
    "evaluate",
    "enumerate_data",
]


class UnknownGraphShape(ValueError):
    pass


class GraphType(enum.IntEnum):
    TYPE1 = 1
    TYPE2 = 2
    TYPE3 = 3


_SHAPES = {
    GraphType.TYPE1: Counter({(0, 1): 1, (0, 2): 1, (0, 3): 1, (1, 2): 1, (1, 3): 1, (2, 3): 1}),
    GraphType.TYPE2: Counter({(0, 1): 1, (2, 3): 1, (1, 2): 2, (0, 3): 2}),
    GraphType.TYPE3: Counter({(0, 1): 1, (2, 3): 1, (0, 2): 2, (1, 3): 2}),
}


class Family(str, enum.Enum):
    F1A = "1a"
    F1B = "1b"
    F2A = "2a"
    F2B = "2b"
    UNCLASSIFIED = "unclassified"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class FamilyMatch:
    family: Family
    parameters: tuple[int, ...] | None = None

    def template(self) -> FixedPointData:
        if self.family is Family.UNCLASSIFIED:
            raise ValueError("unclassified data has no template")
        return catalog.make(self.family.value, self.parameters or ())

    def to_dict(self) -> dict:
        return {"family": self.family.value,
                "parameters": list(self.parameters) if self.parameters is not None else None}


def graph_type(data: FixedPointData) -> GraphType:
    """Classify the edge multigraph of 4-point, dimension-6 data."""
    shape = Counter((e.lower, e.upper) for e in data.edges)
    for tag, expected in _SHAPES.items():
        if shape == expected:
            return tag
    raise UnknownGraphShape(f"edge multigraph {dict(shape)} matches none of the three types")


def match_family(data: FixedPointData) -> FamilyMatch:
    """Compare against the four parametric templates after putting ``P0`` at 0."""
    if data.half_dimension != 3 or len(data.points) != 4:
        return FamilyMatch(Family.UNCLASSIFIED)
    d = normalize(data)
    a, b, c = d.gaps
    if min(a, b, c) < 1:
        return FamilyMatch(Family.UNCLASSIFIED)
    if d == catalog.make_cp3(a, b, c):
        return FamilyMatch(Family.F1A, (a, b, c))
    if a == c and b % 2 == 0 and d == catalog.make_grass(a, b):
        return FamilyMatch(Family.F1B, (a, b))
    if d == catalog.make_v5():
        return FamilyMatch(Family.F2A, ())
    if d == catalog.make_v22():
        return FamilyMatch(Family.F2B, ())
    return FamilyMatch(Family.UNCLASSIFIED)


@lru_cache(maxsize=None)
def _divisors(v: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, v + 1) if v % d == 0)


def _unordered_pairs(v: int):
    ds = _divisors(v)
    for i, x in enumerate(ds):
        for y in ds[i:]:
            yield x, y


@dataclass(frozen=True)
class SearchParameters:
    """A point of the search grid.

    ``divisors`` is ``(l1, l2, m1, m2)`` for type 1, where the edges are
    ``P0P2: (a+b)/l1``, ``P1P2: b/l2``, ``P1P3: (b+c)/m1``, ``P0P3: (a+b+c)/m2``.
    For type 2 it is ``(m1, m2, l1, l2)`` with ``P0P3`` doubled over
    ``a+b+c`` and ``P1P2`` doubled over ``b``; for type 3 ``(m1, m2, l1, l2)``
    with ``P0P2`` doubled over ``a+b`` and ``P1P3`` doubled over ``b+c``.
    """

    graph_type: GraphType
    gaps: tuple[int, int, int]
    divisors: tuple[int, int, int, int]

    @property
    def moments(self) -> tuple[int, int, int, int]:
        a, b, c = self.gaps
        return (0, a, a + b, a + b + c)

    def edge_list(self) -> list[tuple[int, int, int]]:
        a, b, c = self.gaps
        s = a + b + c
        x1, x2, y1, y2 = self.divisors
        edges = [(0, 1, a), (2, 3, c)]
        if self.graph_type is GraphType.TYPE1:
            edges += [(0, 2, (a + b) // x1), (1, 2, b // x2), (1, 3, (b + c) // y1),
                      (0, 3, s // y2)]
        elif self.graph_type is GraphType.TYPE2:
            edges += [(0, 3, s // x1), (0, 3, s // x2), (1, 2, b // y1), (1, 2, b // y2)]
        else:
            edges += [(0, 2, (a + b) // x1), (0, 2, (a + b) // x2), (1, 3, (b + c) // y1),
                      (1, 3, (b + c) // y2)]
        return edges

    def weights(self) -> tuple[tuple[int, ...], ...]:
        per_point: list[list[int]] = [[], [], [], []]
        for lo, hi, w in self.edge_list():
            per_point[lo].append(w)
            per_point[hi].append(-w)
        return tuple(tuple(ws) for ws in per_point)

    def to_data(self) -> FixedPointData:
        return from_moments(self.moments, self.edge_list(), check=False)


def _grid_for(tag: GraphType, a: int, b: int, c: int) -> Iterator[SearchParameters]:
    s = a + b + c
    gaps = (a, b, c)
    if tag is GraphType.TYPE1:
        for l1 in _divisors(a + b):
            for l2 in _divisors(b):
                for m1 in _divisors(b + c):
                    for m2 in _divisors(s):
                        yield SearchParameters(tag, gaps, (l1, l2, m1, m2))
    elif tag is GraphType.TYPE2:
        for m1, m2 in _unordered_pairs(s):
            for l1, l2 in _unordered_pairs(b):
                yield SearchParameters(tag, gaps, (m1, m2, l1, l2))
    else:
        for m1, m2 in _unordered_pairs(a + b):
            for l1, l2 in _unordered_pairs(b + c):
                yield SearchParameters(tag, gaps, (m1, m2, l1, l2))


def candidates(max_gap: int, graph_types: Iterable[int] | None = None) -> Iterator[SearchParameters]:
    """Every grid point with gaps in ``1..max_gap``; no gap relation is assumed."""
    tags = sorted(GraphType(t) for t in (graph_types or GraphType))
    for tag in tags:
        for a in range(1, max_gap + 1):
            for b in range(1, max_gap + 1):
                for c in range(1, max_gap + 1):
                    yield from _grid_for(tag, a, b, c)


@dataclass(frozen=True)
class EnumerationResult:
    data: FixedPointData
    graph_type: GraphType
    family: FamilyMatch
    report: VerificationReport

    def to_dict(self) -> dict:
        return {"data": to_dict(self.data), "graph_type": int(self.graph_type),
                "family": self.family.family.value,
                "parameters": self.family.to_dict()["parameters"],
                "report": self.report.to_dict()}


@dataclass
class Enumeration:
    max_gap: int
    results: list[EnumerationResult]
    rejections: Counter = field(default_factory=Counter)
    candidates: int = 0

    def by_family(self) -> Counter:
        return Counter(r.family.family.value for r in self.results)

    def by_graph_type(self) -> Counter:
        return Counter(int(r.graph_type) for r in self.results)

    def summary(self, histogram: bool = True) -> dict:
        out = {
            "max_gap": self.max_gap,
            "candidates": self.candidates,
            "count": len(self.results),
            "by_family": dict(sorted(self.by_family().items())),
            "by_graph_type": {str(k): v for k, v in sorted(self.by_graph_type().items())},
        }
        if histogram:
            out["rejections"] = dict(sorted(self.rejections.items()))
        return out


def evaluate(data: FixedPointData, disable: Iterable[str] = ()) -> tuple[str | None, VerificationReport | None]:
    """Run the pruning pipeline on one candidate.

    Returns ``(first_failure, report)``; ``first_failure`` is ``None`` for a
    survivor.  Poincare duality goes first because it is cheap and is what
    every case of the classification starts from; then the remaining
    checks in report order; then the Chern class cross-checks.
    """
    disable = frozenset(disable)
    if "poincare_duality" not in disable:
        try:
            if not check_poincare_duality(data).passed:
                return "poincare_duality", None
        except NonIntegralCoefficient:
            return "basis_integrality", None
    report = verify_all(data, disable=disable)
    if not report.overall:
        return report.first_failure, report
    try:
        chern_numbers(data)
        if not check_chern_restrictions(data).passed:
            return "chern_cross_check", report
    except InvariantError:
        return "chern_cross_check", report
    return None, report


def _run_block(args) -> tuple[list[EnumerationResult], Counter, int]:
    tag, a, max_gap, disable = args
    found: list[EnumerationResult] = []
    rejections: Counter = Counter()
    seen = set()
    count = 0
    for b in range(1, max_gap + 1):
        for c in range(1, max_gap + 1):
            for params in _grid_for(tag, a, b, c):
                if "poincare_duality" not in disable and not duality_holds(params.moments,
                                                                           params.weights()):
                    count += 1
                    rejections["poincare_duality"] += 1
                    continue
                data = params.to_data()
                if data in seen:
                    continue
                seen.add(data)
                count += 1
                failure, report = evaluate(data, disable)
                if failure is not None:
                    rejections[failure] += 1
                    continue
                found.append(EnumerationResult(data, tag, match_family(data), report))
    return found, rejections, count


def _sort_key(r: EnumerationResult):
    return (int(r.graph_type), r.data.moments, r.data.edges)


def enumerate_data(max_gap: int, graph_types: Iterable[int] | None = None,
                   disable: Iterable[str] = (), jobs: int = 1) -> Enumeration:
    """All candidates with gaps up to ``max_gap`` that survive every constraint.

    ``graph_types`` filters the multigraph types searched, ``disable`` removes
    named checks from the pipeline, and ``jobs > 1`` spreads the grid over
    worker processes.  Output order is canonical and independent of ``jobs``.
    """
    if max_gap < 1:
        raise ValueError("max_gap must be >= 1")
    tags = sorted(GraphType(t) for t in (graph_types or GraphType))
    disable = tuple(sorted(disable))
    blocks = [(tag, a, max_gap, disable) for tag in tags for a in range(1, max_gap + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outputs = list(pool.map(_run_block, blocks))
    else:
        outputs = [_run_block(b) for b in blocks]

    merged: dict[FixedPointData, EnumerationResult] = {}
    rejections: Counter = Counter()
    total = 0
    for found, rej, count in outputs:
        rejections.update(rej)
        total += count
        for r in found:
            merged.setdefault(r.data, r)
    results = sorted(merged.values(), key=_sort_key)
    return Enumeration(max_gap, results, rejections, total)
