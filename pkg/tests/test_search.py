"""Tests for the pruned half-isomorphism search."""

import pytest

from core.catalog import cyclic_group, get_entry
from core.halfmorph import Verdict
from core.latin import enumerate_loops
from core.loop import element_order
from core.search import (
    HalfMorphismSearch,
    SearchOptions,
    brute_force_half_isomorphisms,
    enumerate_half_homomorphisms,
    enumerate_half_isomorphisms,
    generation_order,
)


def _images(results):
    return [phi.images for phi, _ in results]


def test_s3_self_search(s3):
    results = list(enumerate_half_isomorphisms(s3, s3))
    verdicts = [c.verdict for _, c in results]
    assert len(results) == 12
    assert verdicts.count(Verdict.ISOMORPHISM) == 6
    assert verdicts.count(Verdict.ANTI_ISOMORPHISM) == 6
    assert Verdict.PROPER not in verdicts


def test_c3_self_search(c3):
    assert _images(enumerate_half_isomorphisms(c3, c3)) == [(0, 1, 2), (0, 2, 1)]


def test_results_sorted_and_distinct(s3):
    images = _images(enumerate_half_isomorphisms(s3, s3))
    assert images == sorted(set(images))


def test_example_pair_is_all_proper(paper_dot, paper_star):
    results = list(enumerate_half_isomorphisms(paper_dot, paper_star))
    assert (0, 1, 2, 3, 4, 5) in _images(results)
    assert all(c.verdict is Verdict.PROPER for _, c in results)


def test_matches_brute_force_on_example(paper_dot, paper_star):
    pruned = {(phi.images, c.verdict) for phi, c in enumerate_half_isomorphisms(paper_dot, paper_star)}
    naive = {(phi.images, c.verdict) for phi, c in brute_force_half_isomorphisms(paper_dot, paper_star)}
    assert pruned == naive


def test_matches_brute_force_on_order_four():
    loops = list(enumerate_loops(4))
    for A in loops:
        for B in loops:
            pruned = _images(enumerate_half_isomorphisms(A, B))
            naive = sorted(phi.images for phi, _ in brute_force_half_isomorphisms(A, B))
            assert pruned == naive


def test_order_filter_does_not_change_results(s3):
    with_filter = _images(enumerate_half_isomorphisms(s3, s3, SearchOptions(order_filter=True)))
    without = _images(enumerate_half_isomorphisms(s3, s3, SearchOptions(order_filter=False)))
    assert with_filter == without


def test_proper_only_and_first(paper_dot, paper_star, s3):
    first = list(enumerate_half_isomorphisms(paper_dot, paper_star, SearchOptions.proper_only(first=True)))
    assert len(first) == 1
    assert first[0][1].verdict is Verdict.PROPER
    assert list(enumerate_half_isomorphisms(s3, s3, SearchOptions.proper_only())) == []


def test_order_mismatch_yields_nothing(s3, c3):
    assert list(enumerate_half_isomorphisms(s3, c3)) == []


def test_parallel_matches_serial(s3):
    serial = _images(enumerate_half_isomorphisms(s3, s3, SearchOptions(workers=1)))
    parallel = _images(enumerate_half_isomorphisms(s3, s3, SearchOptions(workers=2)))
    assert serial == parallel


def test_half_homomorphisms_into_c2(s3):
    results = list(enumerate_half_homomorphisms(s3, cyclic_group(2)))
    sign = tuple(0 if element_order(s3, x) in (1, 3) else 1 for x in range(6))
    assert _images(results) == [(0, 0, 0, 0, 0, 0), sign]
    assert all(c.verdict is Verdict.HALF_HOMOMORPHISM for _, c in results)


def test_generation_order(s3):
    order = generation_order(s3)
    assert order[0] == 0
    assert sorted(order) == list(range(6))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_trivial_orders(n):
    C = cyclic_group(n)
    search = HalfMorphismSearch(C, C)
    assert len(search.solve()) == len(brute_force_half_isomorphisms(C, C))


@pytest.mark.parametrize("name", ["S3", "paper-star", "D4"])
def test_first_is_lexicographic_minimum(name):
    Q = get_entry(name).loop
    everything = _images(enumerate_half_isomorphisms(Q, Q))
    first = _images(enumerate_half_isomorphisms(Q, Q, SearchOptions(first=True)))
    assert first == [min(everything)]
    assert first == [tuple(range(Q.order))]


def test_first_proper_is_smallest_proper(paper_dot, paper_star):
    proper = _images(enumerate_half_isomorphisms(paper_dot, paper_star, SearchOptions.proper_only()))
    first = _images(enumerate_half_isomorphisms(paper_dot, paper_star, SearchOptions.proper_only(first=True)))
    assert first == [proper[0]]
    assert first == [(0, 1, 2, 3, 4, 5)]
