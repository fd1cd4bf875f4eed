"""
Catalog — Built-in Loops

Named loops shipped with the library: the two order-6 example tables read
from data/, cyclic groups C1..C8, S3, D4 and Q8 built from sympy permutation
groups, and Chein doubles M(G, 2) of the nonabelian ones. Enumerated loops
of small order join the catalog on demand.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np
from sympy.combinatorics import Permutation, PermutationGroup
from sympy.combinatorics.named_groups import DihedralGroup, SymmetricGroup

from core.errors import InputError, InvariantViolation
from core.identities import is_commutative, is_group, is_moufang
from core.latin import enumerate_loops
from core.loop import LoopTable, load_loop, two_sided_inverses

logger = logging.getLogger("halfloop.catalog")

DATA_DIR = Path(__file__).resolve().parent.parent / "data"
EXAMPLE_FILES = ("paper-dot", "paper-star")


class Provenance(str, Enum):
    PAPER_EXAMPLE = "paper-example"
    GROUP_CONSTRUCTION = "group-construction"
    CHEIN_DOUBLE = "chein-double"
    ENUMERATED = "enumerated"
    USER_SUPPLIED = "user-supplied"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    loop: LoopTable
    provenance: Provenance

    @property
    def order(self) -> int:
        return self.loop.order

    @property
    def named(self) -> bool:
        return self.provenance is not Provenance.ENUMERATED


# ── Group constructions ───────────────────────────────────────────


def cyclic_group(n: int) -> LoopTable:
    i, j = np.indices((n, n))
    return LoopTable((i + j) % n, name=f"C{n}")


def permutation_group_table(group: PermutationGroup, name: str) -> LoopTable:
    """Cayley table of a permutation group, elements sorted by array form."""
    elements = sorted(group.elements, key=lambda p: p.array_form)
    index = {p: k for k, p in enumerate(elements)}
    table = [[index[p * q] for q in elements] for p in elements]
    return LoopTable(np.array(table), name=name)


def quaternion_group() -> PermutationGroup:
    """Q8 in its left regular representation on a^k b^e, index k + 4e."""
    a = Permutation([1, 2, 3, 0, 5, 6, 7, 4])
    b = Permutation([4, 7, 6, 5, 2, 1, 0, 3])
    return PermutationGroup(a, b)


def chein_double(G: LoopTable, name: str | None = None) -> LoopTable:
    """M(G, 2) on G ∪ Gu, with gu stored at index |G| + g.

    g·h = gh,  g·(hu) = (hg)u,  (gu)·h = (gh⁻¹)u,  (gu)·(hu) = h⁻¹g
    """
    if not is_group(G).holds:
        raise InputError(f"{G!r} is not a group")
    n = G.order
    T = G.table
    inv = np.array(two_sided_inverses(G))
    g, h = np.indices((n, n))
    table = np.empty((2 * n, 2 * n), dtype=np.int64)
    table[:n, :n] = T
    table[:n, n:] = n + T[h, g]
    table[n:, :n] = n + T[g, inv[h]]
    table[n:, n:] = T[inv[h], g]
    M = LoopTable(table, name=name or (f"chein-{G.name}" if G.name else None))
    if not is_moufang(M).holds:
        raise InvariantViolation(f"Chein double of {G!r} is not Moufang")
    if is_group(M).holds != is_commutative(G).holds:
        raise InvariantViolation(f"Chein double of {G!r} is associative iff G is abelian")
    return M


# ── Catalog ───────────────────────────────────────────────────────


def _load_example(name: str) -> LoopTable:
    loop = load_loop(DATA_DIR / f"{name}.loop")
    return loop.renamed(name)


@lru_cache(maxsize=1)
def catalog_builtin() -> tuple[CatalogEntry, ...]:
    entries = [CatalogEntry(name, _load_example(name), Provenance.PAPER_EXAMPLE) for name in EXAMPLE_FILES]
    entries += [CatalogEntry(f"C{n}", cyclic_group(n), Provenance.GROUP_CONSTRUCTION) for n in range(1, 9)]
    groups = {
        "S3": permutation_group_table(SymmetricGroup(3), "S3"),
        "D4": permutation_group_table(DihedralGroup(4), "D4"),
        "Q8": permutation_group_table(quaternion_group(), "Q8"),
    }
    entries += [CatalogEntry(name, G, Provenance.GROUP_CONSTRUCTION) for name, G in groups.items()]
    entries += [
        CatalogEntry(f"chein-{name}", chein_double(G, f"chein-{name}"), Provenance.CHEIN_DOUBLE)
        for name, G in groups.items()
    ]
    names = [e.name for e in entries]
    if len(set(names)) != len(names):
        raise InvariantViolation("catalog names must be unique")
    logger.debug("Built catalog with %d entries", len(entries))
    return tuple(entries)


def catalog_names() -> list[str]:
    return [e.name for e in catalog_builtin()]


def get_entry(name: str) -> CatalogEntry:
    for entry in catalog_builtin():
        if entry.name == name:
            return entry
    raise InputError(f"unknown catalog entry {name!r}", known=catalog_names())


def resolve_loop(ref: str) -> LoopTable:
    """A catalog name, or else a path to a loop file."""
    for entry in catalog_builtin():
        if entry.name == ref:
            return entry.loop
    if Path(ref).exists():
        return load_loop(ref)
    raise InputError(f"{ref!r} is neither a catalog entry nor a loop file")


def enumerated_entries(max_order: int) -> Iterator[CatalogEntry]:
    for n in range(1, max_order + 1):
        for loop in enumerate_loops(n):
            yield CatalogEntry(loop.name, loop, Provenance.ENUMERATED)


def user_entries(refs: Iterable[str]) -> list[CatalogEntry]:
    """Catalog entries for command-line loop arguments; files are named after their stem."""
    entries = []
    for ref in refs:
        known = next((e for e in catalog_builtin() if e.name == ref), None)
        if known is not None:
            entries.append(known)
            continue
        loop = resolve_loop(ref)
        name = loop.name or Path(ref).stem
        entries.append(CatalogEntry(name, loop.renamed(name), Provenance.USER_SUPPLIED))
    names = [e.name for e in entries]
    if len(set(names)) != len(names):
        raise InputError("loop arguments must have distinct names", names=names)
    return entries
