from collections import Counter

import pytest
from hypothesis import given, settings

from conftest import candidate_data, cpn
from hamsix.catalog import make_cp3, make_grass, make_v5
from hamsix.core import (DataFormatError, DivisibilityViolation, FixedPoint, FixedPointData,
                         IndexPatternViolation, IsotropyEdge, NonMonotoneMoment, WrongEdgeCount,
                         build, from_dict, from_json, from_moments, normalize, profile, reverse,
                         structural_violations, to_dict, to_json, translate, weights_of)

CP3_EDGES = [(0, 1, 1), (0, 2, 2), (0, 3, 3), (1, 2, 1), (1, 3, 2), (2, 3, 1)]
V5_EDGES = [(0, 1, 1), (2, 3, 1), (1, 2, 1), (1, 2, 4), (0, 3, 2), (0, 3, 3)]


def points(*moments):
    return [(i, m) for i, m in enumerate(moments)]


def ms(ws):
    return Counter(ws)


def test_build_cp3():
    d = build(points(0, 1, 2, 3), CP3_EDGES)
    assert [ms(weights_of(d, i)) for i in range(4)] == [
        ms([1, 2, 3]), ms([-1, 1, 2]), ms([-2, -1, 1]), ms([-3, -2, -1])]


def test_build_v5():
    d = build(points(0, 1, 5, 6), V5_EDGES)
    assert ms(weights_of(d, 1)) == ms([-1, 1, 4])


def test_divisibility_violation():
    edges = [e if e != (1, 2, 4) else (1, 2, 3) for e in V5_EDGES]
    with pytest.raises(DivisibilityViolation) as info:
        build(points(0, 1, 5, 6), edges)
    assert info.value.detail["gap"] == 4


def test_non_monotone_moment():
    with pytest.raises(NonMonotoneMoment):
        build(points(0, 2, 1, 3), CP3_EDGES)


def test_wrong_edge_count():
    with pytest.raises(WrongEdgeCount):
        build(points(0, 1, 2, 3), CP3_EDGES[:-1])
    edges = [e if e != (1, 2, 4) else (0, 2, 5) for e in V5_EDGES]
    with pytest.raises(WrongEdgeCount):
        build(points(0, 1, 5, 6), edges)


def test_index_pattern_violation():
    # P1 gets two negative weights, P2 only one
    edges = [(0, 1, 1), (0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1), (2, 3, 1)]
    with pytest.raises(IndexPatternViolation) as info:
        build(points(0, 1, 2, 3), edges)
    assert info.value.detail["point"] == 1


def test_structural_violations_lists_everything():
    d = FixedPointData(3, tuple(FixedPoint(i, m) for i, m in enumerate((0, 1, 5, 6))),
                       (IsotropyEdge(0, 1, 1), IsotropyEdge(1, 2, 3)))
    kinds = {p.kind for p in structural_violations(d)}
    assert {"edge_count", "divisibility"} <= kinds


def test_weights_of_examples():
    assert ms(weights_of(make_v5(), 2)) == ms([-1, -4, 1])
    assert ms(weights_of(make_cp3(1, 1, 1), 0)) == ms([1, 2, 3])
    assert ms(weights_of(make_grass(1, 2), 3)) == ms([-2, -3, -1])


def test_profile_v5():
    prof = profile(make_v5())
    assert [p.gamma for p in prof] == [6, 4, -4, -6]
    assert [p.lambda_full for p in prof] == [6, -4, 4, -6]
    assert [p.sigma2 for p in prof] == [11, -1, -1, 11]
    assert [p.index for p in prof] == [0, 2, 4, 6]


def test_profile_cp3_lambda_minus():
    assert [p.lambda_minus for p in profile(make_cp3(1, 1, 1))] == [1, -1, 2, -6]


@given(candidate_data())
def test_profile_consistency(d):
    for p in profile(d):
        assert p.gamma == sum(weights_of(d, p.point))
        assert (p.lambda_minus < 0) == (p.index // 2 % 2 == 1)


def test_reverse_cp3_is_cp3_flipped():
    assert normalize(reverse(make_cp3(1, 2, 3))) == make_cp3(3, 2, 1)


def test_reverse_v5_is_v5():
    assert normalize(reverse(make_v5())) == make_v5()


@given(candidate_data())
def test_reverse_involution(d):
    r = reverse(d)
    assert reverse(r) == d
    n = d.half_dimension
    prof, rprof = profile(d), profile(r)
    for i in range(n + 1):
        assert rprof[i].gamma == -prof[n - i].gamma
        assert sorted(weights_of(r, i)) == sorted(-w for w in weights_of(d, n - i))


@given(candidate_data())
def test_candidate_index_invariants(d):
    indices = sorted(p.index for p in profile(d))
    assert indices == [0, 2, 4, 6]
    assert sum(i // 2 for i in indices) == 6


@pytest.mark.parametrize("gaps", [(1,), (2, 3), (1, 1, 1, 1), (1, 2, 3, 4)])
def test_general_half_dimension(gaps):
    d = cpn(gaps)
    assert build(d.points, d.edges, len(gaps)) == d
    assert [p.index for p in profile(d)] == [2 * i for i in range(len(gaps) + 1)]


def test_json_shape():
    text = to_json(make_v5())
    assert text.startswith('{"half_dimension":3,"points":[{"id":0,"moment":0}')
    assert '"edges":[{"lower":0,"upper":1,"weight":1},' in text
    assert " " not in text


def test_json_round_trip_catalog():
    for d in (make_v5(), make_cp3(2, 3, 4), make_grass(3, 4)):
        assert from_json(to_json(d)) == d
        assert to_json(from_json(to_json(d))) == to_json(d)


@given(candidate_data())
@settings(max_examples=200)
def test_json_round_trip(d):
    assert from_json(to_json(d)) == d


def test_big_integers_emit_as_strings():
    big = 2**70
    d = from_moments((0, big, 2 * big), [(0, 1, big), (0, 2, 2 * big), (1, 2, big)])
    obj = to_dict(d)
    assert obj["points"][1]["moment"] == str(big)
    assert obj["edges"][0]["weight"] == str(big)
    assert from_json(to_json(d)) == d


def test_edge_order_is_canonical():
    shuffled = list(reversed(V5_EDGES))
    assert to_json(from_moments((0, 1, 5, 6), shuffled)) == to_json(make_v5())


def test_translate_and_normalize():
    d = translate(make_v5(), 7)
    assert d.moments == (7, 8, 12, 13)
    assert normalize(d) == make_v5()


@pytest.mark.parametrize("text,location", [
    ('{"half_dimension":3', "line 1"),
    ('[]', "$"),
    ('{"half_dimension":3,"points":[],"edges":{}}', "$.edges"),
    ('{"half_dimension":3,"points":[{"id":0}],"edges":[]}', "$.points[0]"),
    ('{"half_dimension":3,"points":[{"id":0,"moment":"x"}],"edges":[]}', "$.points[0].moment"),
])
def test_parse_errors_have_locations(text, location):
    with pytest.raises(DataFormatError) as info:
        from_json(text)
    assert info.value.location.startswith(location)


def test_from_dict_can_skip_validation():
    obj = to_dict(make_v5())
    obj["edges"].pop()
    with pytest.raises(WrongEdgeCount):
        from_dict(obj)
    assert len(from_dict(obj, check=False).edges) == 5
