import random

import pytest
from hypothesis import strategies as st

from hamsix.classifier import (GraphType, SearchParameters, _divisors, _unordered_pairs,
                               enumerate_data)
from hamsix.core import FixedPoint, FixedPointData, IsotropyEdge

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def enum8():
    return enumerate_data(8)


@pytest.fixture(scope="session")
def enum12():
    return enumerate_data(12)


def scale(data, m):
    """Multiply every moment value and weight by ``m``."""
    return FixedPointData(
        data.half_dimension,
        tuple(FixedPoint(p.id, m * p.moment) for p in data.points),
        tuple(IsotropyEdge(e.lower, e.upper, m * e.weight) for e in data.edges),
    )


def cpn(gaps):
    """CP^n with the standard action; moments are partial sums of ``gaps``."""
    moments = [0]
    for g in gaps:
        moments.append(moments[-1] + g)
    n = len(gaps)
    edges = [IsotropyEdge(i, j, moments[j] - moments[i])
             for i in range(n + 1) for j in range(i + 1, n + 1)]
    return FixedPointData(n, tuple(FixedPoint(i, v) for i, v in enumerate(moments)), tuple(edges))


def _divisor_choices(tag, a, b, c):
    s = a + b + c
    if tag is GraphType.TYPE1:
        return [_divisors(a + b), _divisors(b), _divisors(b + c), _divisors(s)]
    if tag is GraphType.TYPE2:
        return [list(_unordered_pairs(s)), list(_unordered_pairs(b))]
    return [list(_unordered_pairs(a + b)), list(_unordered_pairs(b + c))]


def _assemble(tag, gaps, picks):
    if tag is GraphType.TYPE1:
        divisors = tuple(picks)
    else:
        divisors = picks[0] + picks[1]
    return SearchParameters(tag, gaps, divisors)


def random_candidates(count, max_gap=12, seed=20261015):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        tag = rng.choice(list(GraphType))
        gaps = tuple(rng.randint(1, max_gap) for _ in range(3))
        picks = [rng.choice(list(opts)) for opts in _divisor_choices(tag, *gaps)]
        out.append(_assemble(tag, gaps, picks).to_data())
    return out


@st.composite
def candidate_data(draw, max_gap=12):
    """Structurally valid 4-point data drawn from the search grid."""
    tag = draw(st.sampled_from(list(GraphType)))
    gaps = tuple(draw(st.integers(1, max_gap)) for _ in range(3))
    picks = [draw(st.sampled_from(list(opts))) for opts in _divisor_choices(tag, *gaps)]
    return _assemble(tag, gaps, picks).to_data()
