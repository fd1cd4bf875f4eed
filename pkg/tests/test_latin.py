"""Tests for reduced Latin square enumeration."""

import pytest

from core.errors import InputError
from core.identities import is_group, is_moufang
from core.latin import count_loops, enumerate_grids, enumerate_loops, naive_enumerate_grids


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (3, 1), (4, 4), (5, 56)])
def test_small_counts(n, expected):
    assert count_loops(n) == expected
    assert len(naive_enumerate_grids(n)) == expected


def test_order_six_count():
    assert count_loops(6) == 9408


def test_backtracking_matches_naive_order_five():
    fast = [tuple(tuple(row) for row in grid) for grid in enumerate_grids(5)]
    assert fast == naive_enumerate_grids(5)


def test_loops_are_named_and_distinct():
    loops = list(enumerate_loops(4))
    assert [Q.name for Q in loops] == ["enum-4-0", "enum-4-1", "enum-4-2", "enum-4-3"]
    assert len({Q.table.tobytes() for Q in loops}) == 4


def test_order_five_groups():
    assert sum(is_group(Q).holds for Q in enumerate_loops(5)) == 6


def test_order_six_groups_and_moufang():
    loops = list(enumerate_loops(6))
    assert sum(is_group(Q).holds for Q in loops) == 80
    assert sum(is_moufang(Q).holds for Q in loops) == 80


@pytest.mark.parametrize("n", [0, 7])
def test_order_out_of_range(n):
    with pytest.raises(InputError):
        list(enumerate_loops(n))
