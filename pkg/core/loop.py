"""
Loop Core — Cayley Tables and Their Primitives

A finite loop is stored as an n×n numpy table over the carrier 0..n-1 with
the neutral element pinned to index 0. Tables are validated once at
construction and are read-only afterwards, so a LoopTable can be shared
freely between threads and pickled into worker processes.

Division tables are derived lazily:
  ldiv[a, b] = a\\b   (the x with a·x = b)
  rdiv[b, a] = b/a    (the y with y·a = b)
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from pathlib import Path
from typing import Iterable

import numpy as np
from pydantic import ValidationError

from core.errors import InputError, NotPowerAssociative, ParseError, TwoSidedInverseAbsent
from models.schemas import LoopFile

logger = logging.getLogger("halfloop.loop")


def _latin_problem(grid: np.ndarray) -> ParseError | None:
    """First violation of the loop axioms in a square integer grid, or None."""
    n = grid.shape[0]
    expected = np.arange(n)
    for i in range(n):
        row = grid[i]
        if (row < 0).any() or (row >= n).any():
            j = int(np.flatnonzero((row < 0) | (row >= n))[0])
            return ParseError(f"entry {int(row[j])} out of range at row {i}, column {j}", row=i, column=j)
        if len(np.unique(row)) != n:
            _, first = np.unique(row, return_index=True)
            dup = sorted(set(range(n)) - set(first.tolist()))[0]
            return ParseError(f"row {i} repeats entry {int(row[dup])}", row=i, column=dup)
    for j in range(n):
        col = grid[:, j]
        if len(np.unique(col)) != n:
            _, first = np.unique(col, return_index=True)
            dup = sorted(set(range(n)) - set(first.tolist()))[0]
            return ParseError(f"column {j} repeats entry {int(col[dup])}", row=dup, column=j)
    if not np.array_equal(grid[0], expected):
        j = int(np.flatnonzero(grid[0] != expected)[0])
        return ParseError("row 0 is not the identity permutation", row=0, column=j)
    if not np.array_equal(grid[:, 0], expected):
        i = int(np.flatnonzero(grid[:, 0] != expected)[0])
        return ParseError("column 0 is not the identity permutation", row=i, column=0)
    return None


@dataclass(frozen=True, eq=False)
class LoopTable:
    """A finite loop as a validated, immutable Cayley table."""

    table: np.ndarray
    name: str | None = None

    def __post_init__(self) -> None:
        try:
            grid = np.array(self.table, dtype=np.int64)
        except (TypeError, ValueError) as e:
            raise ParseError(f"table is not an integer grid: {e}") from e
        if grid.ndim != 2 or grid.shape[0] != grid.shape[1] or grid.shape[0] == 0:
            raise ParseError(f"table must be a non-empty square grid, got shape {grid.shape}")
        problem = _latin_problem(grid)
        if problem is not None:
            raise problem
        grid.setflags(write=False)
        object.__setattr__(self, "table", grid)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @cached_property
    def rows(self) -> list[list[int]]:
        """Plain-list view for scalar-heavy inner loops."""
        return self.table.tolist()

    @cached_property
    def ldiv(self) -> np.ndarray:
        n = self.order
        out = np.empty((n, n), dtype=np.int64)
        out[np.arange(n)[:, None], self.table] = np.arange(n)[None, :]
        out.setflags(write=False)
        return out

    @cached_property
    def rdiv(self) -> np.ndarray:
        n = self.order
        out = np.empty((n, n), dtype=np.int64)
        out[self.table, np.arange(n)[None, :]] = np.arange(n)[:, None]
        out.setflags(write=False)
        return out

    @cached_property
    def _key(self) -> bytes:
        return self.table.tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LoopTable):
            return NotImplemented
        return self.name == other.name and self.order == other.order and self._key == other._key

    def __hash__(self) -> int:
        return hash((self.order, self._key))

    def __repr__(self) -> str:
        label = self.name or "unnamed"
        return f"LoopTable({label!r}, order={self.order})"

    def same_table(self, other: LoopTable) -> bool:
        return self.order == other.order and self._key == other._key

    def renamed(self, name: str | None) -> LoopTable:
        return LoopTable(self.table, name=name)


# ── Primitives ────────────────────────────────────────────────────


def check_element(Q: LoopTable, x: int) -> int:
    if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
        raise InputError(f"element must be an integer, got {x!r}")
    if not 0 <= int(x) < Q.order:
        raise InputError(f"element {x} outside carrier 0..{Q.order - 1}", element=int(x))
    return int(x)


def multiply(Q: LoopTable, x: int, y: int) -> int:
    return int(Q.table[check_element(Q, x), check_element(Q, y)])


def left_divide(Q: LoopTable, a: int, b: int) -> int:
    """The unique x with a·x = b."""
    return int(Q.ldiv[check_element(Q, a), check_element(Q, b)])


def right_divide(Q: LoopTable, a: int, b: int) -> int:
    """The unique y with y·a = b."""
    return int(Q.rdiv[check_element(Q, b), check_element(Q, a)])


def inverse(Q: LoopTable, x: int) -> int:
    right = left_divide(Q, x, 0)
    left = right_divide(Q, x, 0)
    if right != left:
        raise TwoSidedInverseAbsent(x, right_inverse=right, left_inverse=left)
    return right


def two_sided_inverses(Q: LoopTable) -> list[int]:
    """Inverse of every element, -1 where left and right inverses differ."""
    right = Q.ldiv[:, 0]
    left = Q.rdiv[0, :]
    return np.where(right == left, right, -1).tolist()


def closure(Q: LoopTable, seeds: Iterable[int]) -> np.ndarray:
    """Boolean mask of the least subset containing seeds and 0, closed under · \\ and /."""
    mask = np.zeros(Q.order, dtype=bool)
    mask[0] = True
    for s in seeds:
        mask[check_element(Q, s)] = True
    while True:
        idx = np.flatnonzero(mask)
        grid = np.ix_(idx, idx)
        grown = mask.copy()
        grown[Q.table[grid].ravel()] = True
        grown[Q.ldiv[grid].ravel()] = True
        grown[Q.rdiv[grid].ravel()] = True
        if grown.sum() == mask.sum():
            return mask
        mask = grown


def associativity_cube(Q: LoopTable) -> np.ndarray:
    """cube[x, y, z] is True iff (xy)z = x(yz)."""
    T = Q.table
    x, y, z = np.indices((Q.order,) * 3)
    return T[T[x, y], z] == T[x, T[y, z]]


def first_associativity_failure(Q: LoopTable, elements: np.ndarray) -> tuple[int, int, int] | None:
    """Smallest triple over `elements` (sorted) where associativity fails."""
    T = Q.table
    x, y, z = np.meshgrid(elements, elements, elements, indexing="ij")
    bad = np.argwhere(T[T[x, y], z] != T[x, T[y, z]])
    if bad.size == 0:
        return None
    i, j, k = bad[0]
    return int(elements[i]), int(elements[j]), int(elements[k])


@lru_cache(maxsize=4096)
def _cyclic_failure(Q: LoopTable, x: int) -> tuple[int, int, int] | None:
    return first_associativity_failure(Q, np.flatnonzero(closure(Q, [x])))


def power(Q: LoopTable, x: int, k: int) -> int:
    """x^k by left-bracketed products; negative k uses the two-sided inverse."""
    x = check_element(Q, x)
    witness = _cyclic_failure(Q, x)
    if witness is not None:
        raise NotPowerAssociative(x, witness)
    base = x if k >= 0 else inverse(Q, x)
    result = 0
    for _ in range(abs(k)):
        result = int(Q.table[result, base])
    return result


def element_order(Q: LoopTable, x: int) -> int:
    """Size of the cyclic subloop generated by x."""
    return int(closure(Q, [x]).sum())


# ── Text and JSON formats ─────────────────────────────────────────


def parse_loop(text: str) -> LoopTable:
    """Parse the text format: 'order n', optional 'name <label>', then n rows."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("order"):
        raise ParseError("first line must be 'order n'")
    head = lines[0].split()
    if len(head) != 2 or not head[1].isdigit() or int(head[1]) < 1:
        raise ParseError(f"bad order line: {lines[0]!r}")
    n = int(head[1])
    body = lines[1:]
    name = None
    if body and body[0].startswith("name"):
        name = body[0][4:].strip() or None
        body = body[1:]
    if len(body) != n:
        raise ParseError(f"expected {n} table rows, found {len(body)}")
    grid = []
    for i, line in enumerate(body):
        cells = line.split()
        if len(cells) != n:
            raise ParseError(f"row {i} has {len(cells)} entries, expected {n}", row=i)
        try:
            grid.append([int(c) for c in cells])
        except ValueError:
            raise ParseError(f"row {i} contains a non-integer entry", row=i) from None
    return LoopTable(np.array(grid), name=name)


def serialize_loop(Q: LoopTable) -> str:
    lines = [f"order {Q.order}"]
    if Q.name:
        lines.append(f"name {Q.name}")
    lines.extend(" ".join(str(v) for v in row) for row in Q.rows)
    return "\n".join(lines) + "\n"


def loop_to_json(Q: LoopTable) -> dict:
    return LoopFile(order=Q.order, name=Q.name, table=Q.rows).model_dump(mode="json")


def parse_loop_json(text: str) -> LoopTable:
    try:
        payload = LoopFile.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"invalid loop JSON: {e.errors()[0]['msg']}") from e
    return loop_from_file(payload)


def loop_from_file(payload: LoopFile) -> LoopTable:
    if len(payload.table) != payload.order:
        raise ParseError(f"order {payload.order} but {len(payload.table)} rows")
    for i, row in enumerate(payload.table):
        if len(row) != payload.order:
            raise ParseError(f"row {i} has {len(row)} entries, expected {payload.order}", row=i)
    return LoopTable(np.array(payload.table), name=payload.name)


def load_loop(path: str | Path) -> LoopTable:
    """Read a loop file in either format; JSON is detected by a leading brace."""
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read loop file {p}: {e}") from e
    loop = parse_loop_json(text) if text.lstrip().startswith("{") else parse_loop(text)
    logger.debug("Loaded %r from %s", loop, p)
    return loop


def dump_loop_json(Q: LoopTable) -> str:
    return json.dumps(loop_to_json(Q), sort_keys=True)
