"""Independent validators for fixed-point data.

Each ``check_*`` function takes :class:`~hamsix.core.FixedPointData` and
returns a :class:`CheckResult`; none of them raise on a failed constraint.
:func:`verify_all` runs them in a fixed order and aggregates a report.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable

from .core import FixedPointData, structural_violations

__all__ = [
    "CheckResult",
    "VerificationReport",
    "InapplicableK",
    "CHECK_ORDER",
    "check_structural",
    "check_index_pattern",
    "check_effectiveness",
    "check_c1_constant",
    "check_largest_weight_index",
    "check_smallest_weight_pairing",
    "check_mod_congruence",
    "check_isotropy_components",
    "verify_all",
]

CHECK_ORDER = (
    "structural",
    "index_pattern",
    "effectiveness",
    "c1_constant",
    "largest_weight_index",
    "smallest_weight_pairing",
    "mod_congruence",
    "isotropy_components",
    "poincare_duality",
)


class InapplicableK(ValueError):
    """The first Chern class constant is undefined, so the index relation can't be tested."""


def jsonable(value):
    """Recursively convert witnesses into JSON-compatible values."""
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return value


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: dict | None = None

    def __post_init__(self):
        if not self.passed and not self.witness:
            raise ValueError(f"failed check {self.name!r} needs a witness")

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = jsonable(self.witness)
        return out


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self) -> str | None:
        for c in self.checks:
            if not c.passed:
                return c.name
        return None

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def to_dict(self) -> dict:
        return {"overall": self.overall, "checks": [c.to_dict() for c in self.checks]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def check_structural(data: FixedPointData) -> CheckResult:
    # index pattern has its own named check
    problems = [p for p in structural_violations(data) if p.kind != "index_pattern"]
    if problems:
        return CheckResult("structural", False, {"violations": [p.to_dict() for p in problems]})
    return CheckResult("structural", True)


def check_index_pattern(data: FixedPointData) -> CheckResult:
    bad = [{"point": i, "index": idx, "expected": 2 * i}
           for i, idx in enumerate(data.indices) if idx != 2 * i]
    if bad:
        return CheckResult("index_pattern", False, {"points": bad})
    return CheckResult("index_pattern", True)


def check_effectiveness(data: FixedPointData) -> CheckResult:
    """A common divisor m > 1 of all weights at a point means Z_m fixes a neighbourhood."""
    bad = []
    for i, ws in enumerate(data.weights):
        g = 0
        for w in ws:
            g = gcd(g, w)
        if g != 1:
            bad.append({"point": i, "gcd": g})
    if bad:
        return CheckResult("effectiveness", False, {"points": bad})
    return CheckResult("effectiveness", True)


def check_c1_constant(data: FixedPointData, integral: bool = True) -> CheckResult:
    """Weight sums must be an affine function of the moment map with slope ``-k``.

    Passing means ``Gamma_i - Gamma_j = k (phi_j - phi_i)`` for all pairs; the
    witness then carries ``k``.  With ``integral=True`` (primitive normalisation)
    a non-integral ``k`` is a failure.
    """
    m = data.moments
    gamma = [sum(ws) for ws in data.weights]
    n = len(m) - 1
    k = Fraction(gamma[0] - gamma[n], m[n] - m[0])
    bad = [i for i in range(1, n) if gamma[0] - gamma[i] != k * (m[i] - m[0])]
    if bad:
        return CheckResult("c1_constant", False, {"k_extremes": k, "inconsistent_points": bad,
                                                  "gamma": gamma})
    if integral and k.denominator != 1:
        return CheckResult("c1_constant", False, {"k": k, "reason": "non-integral k"})
    return CheckResult("c1_constant", True, {"k": int(k) if k.denominator == 1 else k})


def _ij_applicable(wp, wq, w: int) -> bool:
    # P carries +w, Q carries -w
    if any(abs(x) > w for x in wp) or any(abs(x) > w for x in wq):
        return False
    return (-w) not in wp and wq.count(-w) == 1


def check_largest_weight_index(data: FixedPointData, k) -> CheckResult:
    """Index jump across an edge carrying the largest weight.

    For an edge ``(P, Q, w)`` with ``w`` the largest absolute weight at both
    ends, ``-w`` absent at ``P`` and simple at ``Q``, require
    ``(j - i + 1) w = k (phi(Q) - phi(P))`` where ``2i, 2j`` are the indices.
    An edge counts as applicable if the hypotheses hold for ``phi`` or for
    ``-phi``; the conclusion is the same in both orientations.
    """
    if k is None:
        raise InapplicableK("first Chern class constant is undefined")
    m = data.moments
    applicable, skipped, failures = [], [], []
    for e in sorted(set(data.edges)):
        wp, wq = data.weights[e.lower], data.weights[e.upper]
        neg_wp = tuple(-x for x in wp)
        neg_wq = tuple(-x for x in wq)
        desc = [e.lower, e.upper, e.weight]
        if not (_ij_applicable(wp, wq, e.weight) or _ij_applicable(neg_wq, neg_wp, e.weight)):
            skipped.append(desc)
            continue
        applicable.append(desc)
        i, j = data.indices[e.lower] // 2, data.indices[e.upper] // 2
        if (j - i + 1) * e.weight != k * (m[e.upper] - m[e.lower]):
            failures.append({"edge": desc, "lhs": j - i + 1,
                             "rhs": Fraction(k * (m[e.upper] - m[e.lower]), e.weight)})
    witness = {"k": k, "applicable": applicable, "skipped": skipped}
    if failures:
        witness["failures"] = failures
        return CheckResult("largest_weight_index", False, witness)
    return CheckResult("largest_weight_index", True, witness)


def check_smallest_weight_pairing(data: FixedPointData) -> CheckResult:
    """+w at index 2m and -w at index 2m+2 occur equally often, w the smallest weight."""
    w = min(e.weight for e in data.edges)
    plus, minus = Counter(), Counter()
    for ws, idx in zip(data.weights, data.indices):
        level = idx // 2
        plus[level] += ws.count(w)
        minus[level] += ws.count(-w)
    bad = [{"level": 2 * lv, "plus": plus[lv], "minus_above": minus[lv + 1]}
           for lv in range(data.half_dimension) if plus[lv] != minus[lv + 1]]
    if bad:
        return CheckResult("smallest_weight_pairing", False, {"w": w, "levels": bad})
    return CheckResult("smallest_weight_pairing", True, {"w": w})


def check_mod_congruence(data: FixedPointData) -> CheckResult:
    bad = []
    for e in sorted(set(data.edges)):
        w = e.weight
        if w == 1:
            continue
        rp = sorted(x % w for x in data.weights[e.lower])
        rq = sorted(x % w for x in data.weights[e.upper])
        if rp != rq:
            bad.append({"edge": [e.lower, e.upper, w], "lower_residues": rp, "upper_residues": rq})
    if bad:
        return CheckResult("mod_congruence", False, {"edges": bad})
    return CheckResult("mod_congruence", True)


def _divisors_at_least_two(values: Iterable[int]) -> list[int]:
    out = set()
    for v in values:
        d = 1
        while d * d <= v:
            if v % d == 0:
                out.add(d)
                out.add(v // d)
            d += 1
    out.discard(1)
    return sorted(out)


def _components(nodes: int, pairs) -> list[list[int]]:
    parent = list(range(nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    touched = set()
    for u, v in pairs:
        touched.update((u, v))
        parent[find(u)] = find(v)
    groups: dict[int, list[int]] = {}
    for x in sorted(touched):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def check_isotropy_components(data: FixedPointData) -> CheckResult:
    """Sanity of the Z_m-isotropy pieces seen through the edges.

    For every ``m >= 2`` dividing some weight, the edges with ``m | w`` are
    grouped into connected components.  Each component stands in for a
    ``2d``-dimensional Hamiltonian submanifold, so every member must have the
    same number ``d`` of weights divisible by ``m``, it must contain at least
    ``d + 1`` fixed points, and its lowest (highest) point may only carry
    positive (negative) such weights.  Edge connectivity can only split true
    isotropy components, never merge them.
    """
    bad = []
    for m in _divisors_at_least_two({e.weight for e in data.edges}):
        pairs = [(e.lower, e.upper) for e in data.edges if e.weight % m == 0]
        for comp in _components(len(data.points), pairs):
            sub = {p: [x for x in data.weights[p] if x % m == 0] for p in comp}
            dims = {len(v) for v in sub.values()}
            if len(dims) != 1:
                bad.append({"m": m, "component": comp, "reason": "unequal dimension",
                            "counts": [len(sub[p]) for p in comp]})
                continue
            d = dims.pop()
            if len(comp) < d + 1:
                bad.append({"m": m, "component": comp, "reason": "too few fixed points",
                            "dimension": 2 * d})
                continue
            lo, hi = comp[0], comp[-1]
            if any(x < 0 for x in sub[lo]) or any(x > 0 for x in sub[hi]):
                bad.append({"m": m, "component": comp, "reason": "extremum sign"})
    if bad:
        return CheckResult("isotropy_components", False, {"components": bad})
    return CheckResult("isotropy_components", True)


def verify_all(data: FixedPointData, disable: Iterable[str] = ()) -> VerificationReport:
    """Run every check in :data:`CHECK_ORDER`.

    Only a structural failure stops the run early.  Names in ``disable`` are
    skipped entirely (used to probe how much each constraint prunes).
    """
    from .invariants import InvariantError, check_poincare_duality

    disable = frozenset(disable)
    unknown = disable - set(CHECK_ORDER)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")

    structural = check_structural(data)
    if not structural.passed:
        return VerificationReport((structural,))
    results = [structural]

    def run(name, fn):
        if name not in disable:
            results.append(fn())

    run("index_pattern", lambda: check_index_pattern(data))
    run("effectiveness", lambda: check_effectiveness(data))
    c1 = check_c1_constant(data)
    if "c1_constant" not in disable:
        results.append(c1)

    def ij():
        try:
            return check_largest_weight_index(data, c1.witness["k"] if c1.passed else None)
        except InapplicableK as exc:
            return CheckResult("largest_weight_index", False, {"error": "InapplicableK",
                                                               "message": str(exc)})

    run("largest_weight_index", ij)
    run("smallest_weight_pairing", lambda: check_smallest_weight_pairing(data))
    run("mod_congruence", lambda: check_mod_congruence(data))
    run("isotropy_components", lambda: check_isotropy_components(data))

    def duality():
        try:
            return check_poincare_duality(data)
        except InvariantError as exc:
            return CheckResult("poincare_duality", False, exc.to_dict())

    run("poincare_duality", duality)
    return VerificationReport(tuple(results))
