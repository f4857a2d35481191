"""Fixed-point data of the four known families, with the lowest point at moment 0.

=======  ==========================  ===============
family   manifold                    gaps
=======  ==========================  ===============
1a       CP^3                        (a, b, c)
1b       oriented Grassmannian       (a, b, a), b even
2a       V_5                         (1, 4, 1)
2b       V_22                        (1, 10, 1)
=======  ==========================  ===============
"""

from __future__ import annotations

from .core import FixedPointData, from_moments

__all__ = ["OddB", "make_cp3", "make_grass", "make_v5", "make_v22", "FAMILIES", "make"]


class OddB(ValueError):
    pass


def _positive(**kw):
    for name, v in kw.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ValueError(f"{name} must be a positive integer, got {v!r}")


def make_cp3(a: int, b: int, c: int) -> FixedPointData:
    """CP^3 with weights (0, a, a+b, a+b+c) on the homogeneous coordinates."""
    _positive(a=a, b=b, c=c)
    edges = [(0, 1, a), (0, 2, a + b), (0, 3, a + b + c),
             (1, 2, b), (1, 3, b + c), (2, 3, c)]
    return from_moments((0, a, a + b, a + b + c), edges)


def make_grass(a: int, b: int) -> FixedPointData:
    """Grassmannian of oriented 2-planes in R^5; ``b`` must be even."""
    _positive(a=a, b=b)
    if b % 2:
        raise OddB(f"b must be even, got {b}")
    edges = [(0, 1, a), (0, 2, a + b), (0, 3, a + b // 2),
             (1, 2, b // 2), (1, 3, a + b), (2, 3, a)]
    return from_moments((0, a, a + b, 2 * a + b), edges)


def make_v5() -> FixedPointData:
    edges = [(0, 1, 1), (2, 3, 1), (1, 2, 1), (1, 2, 4), (0, 3, 2), (0, 3, 3)]
    return from_moments((0, 1, 5, 6), edges)


def make_v22() -> FixedPointData:
    edges = [(0, 1, 1), (2, 3, 1), (1, 2, 1), (1, 2, 5), (0, 3, 2), (0, 3, 3)]
    return from_moments((0, 1, 11, 12), edges)


FAMILIES = {
    "1a": (make_cp3, 3),
    "1b": (make_grass, 2),
    "2a": (make_v5, 0),
    "2b": (make_v22, 0),
}


def make(family: str, params=()) -> FixedPointData:
    """Dispatch on a family tag (``"1a"``, ``"1b"``, ``"2a"``, ``"2b"``)."""
    try:
        ctor, arity = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(FAMILIES)}") from None
    params = tuple(params)
    if len(params) != arity:
        raise ValueError(f"family {family} takes {arity} parameters, got {len(params)}")
    return ctor(*params)
