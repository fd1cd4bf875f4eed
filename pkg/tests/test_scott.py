"""Tests for Scott triples and their consequences."""

import pytest

from core.catalog import get_entry
from core.errors import NotProper, SourceNotMoufang, TargetNotMoufang
from core.halfmorph import ElementMap, Verdict, classify_map, compose_with_inversion
from core.scott import (
    ScottTriple,
    analyse_proper_map,
    find_scott_triple,
    verify_abelian_squares,
    verify_main_hypothesis_contradiction,
    verify_scott_triple,
)


def test_example_target_is_not_moufang(paper_dot, paper_star):
    with pytest.raises(TargetNotMoufang):
        find_scott_triple(ElementMap.identity(paper_dot, paper_star))


def test_example_reversed_source_is_not_moufang(paper_dot, paper_star):
    phi = ElementMap.identity(paper_star, paper_dot)
    if classify_map(phi).verdict is Verdict.PROPER:
        with pytest.raises(SourceNotMoufang):
            find_scott_triple(phi)


def test_isomorphism_is_refused(s3):
    with pytest.raises(NotProper):
        find_scott_triple(ElementMap.identity(s3))
    with pytest.raises(NotProper):
        verify_main_hypothesis_contradiction(ElementMap.identity(s3), ScottTriple(1, 2, 3))


def test_scott_triple_reversal():
    t = ScottTriple(1, 2, 3)
    assert t.reversed() == ScottTriple(3, 2, 1)
    assert t.pairs() == {"ab": (1, 2), "ac": (1, 3), "bc": (2, 3)}


def test_triple_on_group_fails_certificates(s3):
    check = verify_scott_triple(ElementMap.identity(s3), ScottTriple(1, 3, 4))
    assert not check.passed
    # the identity is an isomorphism everywhere, so condition (ii) cannot hold
    assert check.conditions[1] is False


CHEIN_Q8_PROPER = (0, 1, 2, 3, 4, 5, 6, 7, 8, 11, 10, 9, 14, 15, 12, 13)


@pytest.fixture
def chein_q8_map():
    M = get_entry("chein-Q8").loop
    return ElementMap(M, M, CHEIN_Q8_PROPER)


def test_chein_q8_map_is_proper(chein_q8_map):
    assert classify_map(chein_q8_map).verdict is Verdict.PROPER


def test_chein_q8_scott_triple(chein_q8_map):
    used, t = find_scott_triple(chein_q8_map)
    assert (t.a, t.b, t.c) == (1, 4, 12)
    assert all(cert.passed for cert in t.certificates)
    check = verify_scott_triple(used, t)
    assert check.passed
    assert check.conditions == (True, True, True)
    assert verify_scott_triple(used, t.reversed()).passed


def test_chein_q8_abelian_squares(chein_q8_map):
    used, t = find_scott_triple(chein_q8_map)
    squares = verify_abelian_squares(used, t)
    assert squares.passed
    assert squares.reversed_triple


def test_chein_q8_full_analysis(chein_q8_map):
    analysis = analyse_proper_map(chein_q8_map)
    ab = analysis.decomposition
    assert ab.A == (0, 2)
    assert ab.B == (0, 2, 13, 15)
    assert not ab.covers
    assert analysis.triple.a == ab.outside[0]
    assert analysis.check.passed
    assert analysis.squares.passed
    assert not analysis.contradiction.hypothesis_holds
    assert not analysis.contradiction.reachable


def test_analysis_refuses_isomorphisms():
    M = get_entry("chein-S3").loop
    with pytest.raises(NotProper):
        analyse_proper_map(ElementMap.identity(M))
    with pytest.raises(NotProper):
        analyse_proper_map(compose_with_inversion(ElementMap.identity(M)))
