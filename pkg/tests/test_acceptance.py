"""One test per acceptance criterion; each records a pass/fail line for the summary."""

import contextlib
import math
from fractions import Fraction

import pytest

from conftest import random_candidates, scale
from hamsix.catalog import make_cp3, make_grass, make_v5, make_v22
from hamsix.checks import check_effectiveness, verify_all
from hamsix.classifier import Family, enumerate_data
from hamsix.core import from_json, profile, reverse, to_json, translate
from hamsix.invariants import (InvariantError, basis_coefficients, chern_classes, chern_numbers,
                               invariants_report, ring_structure)


@pytest.fixture
def record(acceptance_log, request):
    @contextlib.contextmanager
    def _record(label):
        ok = False
        try:
            yield
            ok = True
        finally:
            acceptance_log.append(f"[{'PASS' if ok else 'FAIL'}] {label}")
    return _record


def effective(d):
    return all(math.gcd(*map(abs, ws)) == 1 for ws in d.weights)


FAMILIES = {"1a": make_cp3(1, 1, 1), "1b": make_grass(1, 2), "2a": make_v5(), "2b": make_v22()}


def test_criterion_1_catalog_verification(record):
    with record("1 catalog verification"):
        cases = [make_cp3(a, b, c) for a in range(1, 5) for b in range(1, 5) for c in range(1, 5)]
        cases += [make_grass(a, b) for a in range(1, 5) for b in (2, 4)]
        cases = [d for d in cases if effective(d)] + [make_v5(), make_v22()]
        assert len(cases) > 50
        for d in cases:
            assert verify_all(d).overall, d


def test_criterion_2_classification_reproduction(record, enum12):
    with record("2 classification reproduction at B=12"):
        expected = set()
        for a in range(1, 13):
            for b in range(1, 13):
                for c in range(1, 13):
                    d = make_cp3(a, b, c)
                    if effective(d):
                        expected.add(d)
            for b in range(2, 13, 2):
                d = make_grass(a, b)
                if effective(d):
                    expected.add(d)
        expected |= {make_v5(), make_v22()}
        found = [r.data for r in enum12.results]
        assert len(found) == len(set(found))
        assert set(found) == expected
        type2 = [r.data for r in enum12.results if r.graph_type == 2]
        assert type2 == [make_v5(), make_v22()]
        assert make_v5().gaps == (1, 4, 1) and make_v22().gaps == (1, 10, 1)
        assert enum12.by_graph_type().get(3, 0) == 0


def test_criterion_3_ring_presentations(record):
    with record("3 ring presentations N = 1, 2, 5, 22"):
        assert [ring_structure(d).N for d in FAMILIES.values()] == [1, 2, 5, 22]
        assert ring_structure(FAMILIES["1a"]).presentation() == "Z[x]/(x^4)"
        for fam, n in (("1b", 2), ("2a", 5), ("2b", 22)):
            assert f"x^2-{n}y" in ring_structure(FAMILIES[fam]).presentation()
        for abc in [(1, 2, 3), (4, 1, 2)]:
            assert ring_structure(make_cp3(*abc)).N == 1
        assert ring_structure(make_grass(3, 4)).N == 2


def test_criterion_4_total_chern_classes(record):
    with record("4 total Chern classes"):
        got = [chern_classes(d).total[1:] for d in FAMILIES.values()]
        assert got == [(4, 6, 4), (3, 8, 4), (2, 12, 4), (1, 24, 4)]
        # c(CP^3) = (1+x)^4 with x^4 = 0
        assert got[0] == tuple(math.comb(4, i) for i in (1, 2, 3))


def test_criterion_5_chern_numbers(record):
    with record("5 Chern numbers by localization agree with the ring side"):
        expected = [(64, 24, 4), (54, 24, 4), (40, 24, 4), (22, 24, 4)]
        for d, exp in zip(FAMILIES.values(), expected):
            nums = chern_numbers(d, cross_check=False)
            assert nums == exp
            ring, ch = ring_structure(d), chern_classes(d)
            assert nums == (ch.k1 ** 3 * ring.N, ch.k1 * ch.k2, 4)


def test_criterion_6_localization_identities(record, enum8):
    with record("6 localization identities over enumerate(B=8)"):
        assert len(enum8.results) > 100
        for r in enum8.results:
            d = r.data
            lam = [p.lambda_full for p in profile(d)]
            for k in range(3):
                assert sum(Fraction(m ** k, l) for m, l in zip(d.moments, lam)) == 0
            volume = sum(Fraction((-m) ** 3, l) for m, l in zip(d.moments, lam))
            assert volume == basis_coefficients(d)[2]


def _outcomes(d):
    return [(c.name, c.passed, c.to_dict().get("witness")) for c in verify_all(d).checks]


def _invariants(d):
    """The report when the invariants are well defined, else None."""
    try:
        rep = invariants_report(d)
    except InvariantError:
        return None
    return rep if rep["localization_checks"] == "pass" else None


def test_criterion_7_invariance(record, enum8):
    with record("7 invariance under translation and reverse, JSON round trip"):
        population = [r.data for r in enum8.results] + random_candidates(1000)
        for i, d in enumerate(population):
            shift = (i * 7919) % 101 - 50
            base = verify_all(d)
            names = [(c.name, c.passed) for c in base.checks]
            moved = translate(d, shift)
            assert _outcomes(moved) == _outcomes(d)
            assert [(c.name, c.passed) for c in verify_all(reverse(d)).checks] == names
            inv = _invariants(d)
            assert _invariants(moved) == inv
            rinv = _invariants(reverse(d))
            assert (rinv is None) == (inv is None)
            if inv is not None:
                assert rinv["ring"] == inv["ring"] and rinv["chern"] == inv["chern"]
            assert reverse(reverse(d)) == d
            text = to_json(d)
            assert to_json(from_json(text)) == text and from_json(text) == d


def test_criterion_8a_scaling_fails_effectiveness(record):
    with record("8a V5 scaled by 2 fails effectiveness"):
        d = scale(make_v5(), 2)
        assert check_effectiveness(make_v5()).passed
        assert not check_effectiveness(d).passed
        assert verify_all(d).first_failure == "effectiveness"


def test_criterion_8b_removing_pairing_check_admits_extra(record):
    with record("8b disabling the smallest-weight pairing check admits a B=6 candidate"):
        baseline = {r.data for r in enumerate_data(6).results}
        relaxed = enumerate_data(6, disable=["smallest_weight_pairing"])
        extra = {r.data for r in relaxed.results} - baseline
        assert extra, "no candidate is excluded by the pairing check alone at B=6"
        assert all(r.family.family is Family.UNCLASSIFIED
                   for r in relaxed.results if r.data in extra)
