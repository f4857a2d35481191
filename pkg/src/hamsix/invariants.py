"""Global invariants recovered from fixed-point data.

Everything here is exact.  The canonical basis ``alpha_i`` of integral
cohomology satisfies ``[omega]^i = a_i alpha_i`` with

    a_i = prod_{j<i} (phi(P_j) - phi(P_i)) / Lambda_i^-

and its equivariant lift restricts to ``P_j`` as
``(1/a_i) prod_{k<i} (phi(P_k) - phi(P_j)) t^i``.  Chern classes are solved
from their restrictions at the lowest fixed points, and Chern numbers are
recomputed independently by fixed-point localization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Sequence

from .checks import CheckResult, jsonable
from .core import FixedPointData, profile, reverse

__all__ = [
    "InvariantError",
    "NonIntegralCoefficient",
    "NonIntegralRestriction",
    "DualityFailure",
    "NonIntegralChernCoefficient",
    "NonVanishingNegativeDegree",
    "CrossCheckMismatch",
    "RestrictionPolynomial",
    "EquivariantBasis",
    "RingPresentation",
    "ChernData",
    "coefficient_ratios",
    "basis_coefficients",
    "check_poincare_duality",
    "duality_holds",
    "ring_structure",
    "equivariant_basis",
    "chern_classes",
    "check_chern_restrictions",
    "localize",
    "chern_numbers",
    "localization_identities",
    "invariants_report",
]


class InvariantError(ArithmeticError):
    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.detail = detail

    def to_dict(self) -> dict:
        return {"error": type(self).__name__, "message": str(self), **jsonable(self.detail)}


class NonIntegralCoefficient(InvariantError):
    pass


class NonIntegralRestriction(InvariantError):
    pass


class DualityFailure(InvariantError):
    pass


class NonIntegralChernCoefficient(InvariantError):
    pass


class NonVanishingNegativeDegree(InvariantError):
    pass


class CrossCheckMismatch(InvariantError):
    pass


@dataclass(frozen=True)
class RestrictionPolynomial:
    """Polynomial in the equivariant parameter ``t``; ``coeffs[d]`` multiplies ``t**d``."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, c, degree: int) -> "RestrictionPolynomial":
        return cls((0,) * degree + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, d: int):
        return self.coeffs[d] if 0 <= d < len(self.coeffs) else 0

    def __add__(self, other):
        other = _as_poly(other)
        size = max(len(self.coeffs), len(other.coeffs))
        return RestrictionPolynomial(tuple(self.coefficient(d) + other.coefficient(d)
                                           for d in range(size)))

    __radd__ = __add__

    def __neg__(self):
        return RestrictionPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return RestrictionPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RestrictionPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = RestrictionPolynomial((1,))
        for _ in range(k):
            out = out * self
        return out

    def is_integral(self) -> bool:
        return all(Fraction(c).denominator == 1 for c in self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for d, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if d == 0 else f"{c}*t" if d == 1 else f"{c}*t^{d}")
        return " + ".join(terms)


def _as_poly(x) -> RestrictionPolynomial:
    return x if isinstance(x, RestrictionPolynomial) else RestrictionPolynomial((x,))


@dataclass(frozen=True)
class EquivariantBasis:
    """``entries[i][j]`` is the restriction of the i-th basis class to ``P_j``."""

    entries: tuple[tuple[RestrictionPolynomial, ...], ...]

    def __getitem__(self, ij) -> RestrictionPolynomial:
        i, j = ij
        return self.entries[i][j]

    def is_upper_triangular(self) -> bool:
        return all(not self.entries[i][j].coeffs
                   for i in range(len(self.entries)) for j in range(i))


@dataclass(frozen=True)
class RingPresentation:
    """Integral cohomology ring in the canonical basis.

    For half-dimension 3 the ring is ``Z[x, y]/(x^2 - N y, y^2)`` with
    ``x = alpha_1``, ``y = alpha_2`` and top class ``xy = alpha_3``; when
    ``N == 1`` it collapses to ``Z[x]/(x^4)``.
    """

    a: tuple[int, ...]

    @property
    def N(self) -> int:
        return self.a[1]

    @property
    def top_class(self) -> str:
        return "xy"

    def presentation(self) -> str:
        if len(self.a) != 3:
            return f"basis coefficients {list(self.a)}"
        if self.N == 1:
            return "Z[x]/(x^4)"
        return f"Z[x,y]/(x^2-{self.N}y, y^2)"

    def integral(self, x_power: int, y_power: int) -> int:
        """Pair a top-degree monomial ``x^p y^q`` (``p + 2q == 3``) with the fundamental class."""
        if x_power + 2 * y_power != 3:
            raise ValueError("monomial is not of top degree")
        # x^2 = N y, and xy integrates to 1
        return self.N ** (x_power // 2)

    def to_dict(self) -> dict:
        return {"N": self.N, "a": list(self.a)}


@dataclass(frozen=True)
class ChernData:
    k1: int
    k2: int
    k3: int
    chern_numbers: tuple[int, int, int] | None = None

    @property
    def total(self) -> tuple[int, int, int, int]:
        """Coefficients of ``c(M) = 1 + k1 x + k2 y + k3 xy``."""
        return (1, self.k1, self.k2, self.k3)


def coefficient_ratios(data: FixedPointData) -> tuple[Fraction, ...]:
    """``(a_1, ..., a_n)`` as exact rationals, without integrality demands."""
    m = data.moments
    out = []
    for i, prof in enumerate(profile(data)):
        if i == 0:
            continue
        out.append(Fraction(prod(m[j] - m[i] for j in range(i)), prof.lambda_minus))
    return tuple(out)


def basis_coefficients(data: FixedPointData) -> tuple[int, ...]:
    """Positive integers ``a_i`` with ``[omega]^i = a_i alpha_i``.

    Raises :class:`NonIntegralCoefficient` if any ratio fails to be a positive
    integer; such data cannot carry an integral triangular basis.
    """
    out = []
    for i, r in enumerate(coefficient_ratios(data), start=1):
        if r.denominator != 1 or r <= 0:
            raise NonIntegralCoefficient(f"a_{i} = {r} is not a positive integer", index=i,
                                         value=r)
        out.append(int(r))
    return tuple(out)


def _duality_defects(ratios: Sequence[Fraction]) -> list[dict]:
    n = len(ratios)
    a = (Fraction(1),) + tuple(ratios)
    defects = []
    if a[1] != 1:
        defects.append({"relation": "a_1 = 1", "a_1": a[1]})
    for i in range(1, n):
        if a[i] * a[n - i] != a[n]:
            defects.append({"relation": f"a_{i} a_{n - i} = a_{n}", "lhs": a[i] * a[n - i],
                            "rhs": a[n]})
    return defects


def check_poincare_duality(data: FixedPointData) -> CheckResult:
    """Products of complementary basis classes must give the top class.

    Tested for the moment map and its negative.  The rational relations are
    compared first, so a failure is attributed to duality before integrality;
    if the relations hold but some ``a_i`` is not integral,
    :class:`NonIntegralCoefficient` propagates.
    """
    witness = {}
    for label, d in (("phi", data), ("-phi", reverse(data))):
        defects = _duality_defects(coefficient_ratios(d))
        if defects:
            witness[label] = defects
    if witness:
        return CheckResult("poincare_duality", False, witness)
    a = basis_coefficients(data)
    basis_coefficients(reverse(data))
    return CheckResult("poincare_duality", True, {"a": list(a)})


def duality_holds(moments: Sequence[int], weights: Sequence[Sequence[int]]) -> bool:
    """Integer-only screen equivalent to the rational relations of :func:`check_poincare_duality`.

    Works on raw moment values and per-point weights (both orientations) so a
    search can reject candidates before building any data objects.
    """
    n = len(moments) - 1
    flipped_m = tuple(-x for x in reversed(moments))
    flipped_w = tuple(tuple(-w for w in ws) for ws in reversed(weights))
    for m, ws in ((moments, weights), (flipped_m, flipped_w)):
        num, den = [1], [1]
        for i in range(1, n + 1):
            num.append(prod(m[j] - m[i] for j in range(i)))
            den.append(prod(w for w in ws[i] if w < 0))
        if num[1] != den[1]:
            return False
        for i in range(1, n):
            if num[i] * num[n - i] * den[n] != num[n] * den[i] * den[n - i]:
                return False
    return True


def ring_structure(data: FixedPointData) -> RingPresentation:
    result = check_poincare_duality(data)
    if not result.passed:
        raise DualityFailure("basis coefficients violate Poincare duality", **result.witness)
    return RingPresentation(basis_coefficients(data))


def equivariant_basis(data: FixedPointData) -> EquivariantBasis:
    a = (1,) + basis_coefficients(data)
    m = data.moments
    size = len(m)
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            c = Fraction(prod(m[k] - m[j] for k in range(i)), a[i])
            if c.denominator != 1:
                raise NonIntegralRestriction(f"restriction of basis class {i} to P{j} is {c} t^{i}",
                                             i=i, j=j, value=c)
            row.append(RestrictionPolynomial.monomial(int(c), i))
        rows.append(tuple(row))
    return EquivariantBasis(tuple(rows))


def _exact(num, den, what: str):
    q = Fraction(num, den)
    if q.denominator != 1:
        raise NonIntegralChernCoefficient(f"{what} = {q} is not an integer", value=q)
    return int(q)


def _solve_chern(data: FixedPointData):
    if data.half_dimension != 3:
        raise ValueError("Chern class solving is implemented for half-dimension 3 only")
    prof = profile(data)
    basis = equivariant_basis(data)
    g = [p.gamma for p in prof]
    s = [p.sigma2 for p in prof]
    lm = [p.lambda_minus for p in prof]
    b12 = basis[1, 2].coefficient(1)
    k1 = _exact(g[1] - g[0], lm[1], "c1 coefficient")
    b1 = _exact(s[1] - s[0], lm[1], "c2 coefficient of t*alpha_1")
    k2 = _exact(s[2] - s[0] - b1 * b12, lm[2], "c2 coefficient of alpha_2")
    return prof, basis, (g[0], k1), (s[0], b1, k2)


def chern_classes(data: FixedPointData) -> ChernData:
    """Solve ``c1 = k1 x``, ``c2 = k2 y``, ``c3 = k3 xy`` from restrictions at P0, P1, P2."""
    _, _, (_, k1), (_, _, k2) = _solve_chern(data)
    return ChernData(k1=k1, k2=k2, k3=len(data.points))


def check_chern_restrictions(data: FixedPointData) -> CheckResult:
    """The solved equivariant c1, c2 must also restrict correctly at the remaining points."""
    try:
        prof, basis, (a0, a1), (b0, b1, b2) = _solve_chern(data)
    except InvariantError as exc:
        return CheckResult("chern_restrictions", False, exc.to_dict())
    bad = []
    for j, p in enumerate(prof):
        c1 = a0 + a1 * basis[1, j].coefficient(1)
        c2 = b0 + b1 * basis[1, j].coefficient(1) + b2 * basis[2, j].coefficient(2)
        if c1 != p.gamma:
            bad.append({"point": j, "class": "c1", "solved": c1, "expected": p.gamma})
        if c2 != p.sigma2:
            bad.append({"point": j, "class": "c2", "solved": c2, "expected": p.sigma2})
    if bad:
        return CheckResult("chern_restrictions", False, {"mismatches": bad})
    return CheckResult("chern_restrictions", True)


def localize(data: FixedPointData, restriction: Sequence, degree: int) -> Fraction:
    """Integrate an equivariant class of cohomological degree ``degree`` over M.

    ``restriction[i]`` is the class restricted to ``P_i``: a
    :class:`RestrictionPolynomial` homogeneous of t-degree ``degree // 2``, or
    just its coefficient.  Returns ``sum_i r_i / Lambda_i``, the coefficient of
    ``t^(d - n)``.  Below the top degree this must vanish.
    """
    if degree % 2:
        raise ValueError("cohomological degree must be even")
    d = degree // 2
    n = data.half_dimension
    if len(restriction) != len(data.points):
        raise ValueError("need one restriction per fixed point")
    total = Fraction(0)
    for r, p in zip(restriction, profile(data)):
        if isinstance(r, RestrictionPolynomial):
            if any(c for k, c in enumerate(r.coeffs) if k != d):
                raise ValueError(f"restriction {r} is not homogeneous of t-degree {d}")
            r = r.coefficient(d)
        total += Fraction(r) / p.lambda_full
    if d < n and total != 0:
        raise NonVanishingNegativeDegree(f"degree-{degree} class integrates to {total} != 0",
                                         degree=degree, value=total)
    return total


def chern_numbers(data: FixedPointData, cross_check: bool = True) -> tuple[int, int, int]:
    """``(c1^3, c1 c2, c3)`` by localization.

    With ``cross_check`` the values are compared against the ring-side
    products ``k1^3 N``, ``k1 k2`` and the fixed-point count; any
    disagreement raises :class:`CrossCheckMismatch`.
    """
    prof = profile(data)
    c1_cubed = localize(data, [p.gamma ** 3 for p in prof], 6)
    c1c2 = localize(data, [p.gamma * p.sigma2 for p in prof], 6)
    c3 = localize(data, [p.lambda_full for p in prof], 6)
    nums = (c1_cubed, c1c2, c3)
    if any(x.denominator != 1 for x in nums):
        raise CrossCheckMismatch(f"non-integral Chern numbers {nums}", numbers=list(nums))
    nums = tuple(int(x) for x in nums)
    if cross_check:
        ring = ring_structure(data)
        ch = chern_classes(data)
        expected = (ch.k1 ** 3 * ring.integral(3, 0), ch.k1 * ch.k2 * ring.integral(1, 1),
                    ch.k3 * ring.integral(1, 1))
        if nums != expected or nums[2] != len(data.points):
            raise CrossCheckMismatch(f"localization gives {nums}, ring side gives {expected}",
                                     localization=list(nums), ring=list(expected))
    return nums


def localization_identities(data: FixedPointData) -> CheckResult:
    """Vanishing of ``sum phi_i^d / Lambda_i`` for ``d < n`` and the volume ``a_n``."""
    m = data.moments
    n = data.half_dimension
    lam = [p.lambda_full for p in profile(data)]
    bad = []
    for d in range(n):
        s = sum(Fraction(x ** d, l) for x, l in zip(m, lam))
        if s:
            bad.append({"moment_power": d, "sum": s})
    volume = sum(Fraction((-x) ** n, l) for x, l in zip(m, lam))
    try:
        a_n = basis_coefficients(data)[-1]
    except NonIntegralCoefficient as exc:
        bad.append(exc.to_dict())
    else:
        if volume != a_n:
            bad.append({"volume": volume, "a_n": a_n})
    if bad:
        return CheckResult("localization_identities", False, {"failures": bad})
    return CheckResult("localization_identities", True, {"volume": volume})


def invariants_report(data: FixedPointData) -> dict:
    """Ring, Chern classes, Chern numbers and localization status as a JSON-ready dict.

    Raises :class:`InvariantError` when the ring or Chern classes can't be formed.
    """
    ring = ring_structure(data)
    ch = chern_classes(data)
    checks = [localization_identities(data), check_chern_restrictions(data)]
    try:
        nums = chern_numbers(data)
    except CrossCheckMismatch as exc:
        nums = tuple(exc.detail.get("localization", (None,) * 3))
        checks.append(CheckResult("chern_cross_check", False, exc.to_dict()))
    ok = all(c.passed for c in checks)
    report = {
        "ring": ring.to_dict(),
        "chern": {"c": list(ch.total),
                  "numbers": {"c1^3": nums[0], "c1c2": nums[1], "c3": nums[2]}},
        "localization_checks": "pass" if ok else "fail",
    }
    if not ok:
        report["failures"] = [c.to_dict() for c in checks if not c.passed]
    return report


def report_json(data: FixedPointData) -> str:
    return json.dumps(invariants_report(data), separators=(",", ":"))
