"""
Latin — Reduced Latin Squares as Loops

enumerate_loops fills the free (n-1)×(n-1) block cell by cell in row-major
order with row/column bitmasks, trying values in ascending order, so the
stream is the lexicographic order of the flattened tables.

naive_enumerate_grids is an independent generator used only as an oracle:
it picks whole rows from itertools.permutations and checks columns.
"""

from __future__ import annotations

import itertools
import logging
from typing import Iterator

import numpy as np

from core.errors import InputError
from core.loop import LoopTable

logger = logging.getLogger("halfloop.latin")

MAX_ENUMERATION_ORDER = 6


def _check_order(n: int) -> None:
    if not 1 <= n <= MAX_ENUMERATION_ORDER:
        raise InputError(f"loop enumeration supports orders 1..{MAX_ENUMERATION_ORDER}, got {n}")


def enumerate_grids(n: int) -> Iterator[list[list[int]]]:
    """Every reduced Latin square of order n as a nested list (shared; copy to keep)."""
    _check_order(n)
    grid = [[(i if j == 0 else j if i == 0 else -1) for j in range(n)] for i in range(n)]
    full = (1 << n) - 1
    row_used = [(1 << i) for i in range(n)]
    col_used = [(1 << j) for j in range(n)]
    row_used[0] = col_used[0] = full
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]

    def fill(k: int) -> Iterator[list[list[int]]]:
        if k == len(cells):
            yield grid
            return
        i, j = cells[k]
        free = full & ~row_used[i] & ~col_used[j]
        while free:
            low = free & -free
            v = low.bit_length() - 1
            free ^= low
            grid[i][j] = v
            row_used[i] |= low
            col_used[j] |= low
            yield from fill(k + 1)
            row_used[i] ^= low
            col_used[j] ^= low
        grid[i][j] = -1

    yield from fill(0)


def enumerate_loops(n: int) -> Iterator[LoopTable]:
    """All loops of order n with identity 0, named enum-<n>-<index>."""
    for index, grid in enumerate(enumerate_grids(n)):
        yield LoopTable(np.array(grid), name=f"enum-{n}-{index}")


def count_loops(n: int) -> int:
    return sum(1 for _ in enumerate_grids(n))


def naive_enumerate_grids(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Row-at-a-time generator over whole permutations; returns sorted tables."""
    _check_order(n)
    rows_starting = {
        i: [p for p in itertools.permutations(range(n)) if p[0] == i] for i in range(n)
    }
    first = tuple(range(n))
    found: list[tuple[tuple[int, ...], ...]] = []

    def extend(rows: list[tuple[int, ...]]) -> None:
        if len(rows) == n:
            found.append(tuple(rows))
            return
        for cand in rows_starting[len(rows)]:
            if all(cand[j] != r[j] for r in rows for j in range(n)):
                extend(rows + [cand])

    extend([first])
    return sorted(found)
