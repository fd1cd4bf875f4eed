"""
Search — Exhaustive Half-Morphism Enumeration

Backtracking over assignments φ(x) with bitmask domains and constraint
propagation. Each time a variable becomes a singleton it is processed
against every already-processed variable y (with v = φx, w = φy):

  forward     φ(xy), φ(yx) ∈ {v·w, w·v}
  backward    φ(x\\y) ∈ {v\\w, w/v}      φ(y\\x) ∈ {w\\v, v/w}
              φ(y/x) ∈ {w/v, v\\w}      φ(x/y) ∈ {v/w, w\\v}

In bijective mode the value is also removed from every other domain, and
φ(x⁻¹) is pinned to v⁻¹ where both inverses are two-sided. When both loops
are diassociative, domains start restricted to elements of equal order.

Branching follows the generation order of the source loop; values are
tried in ascending order. Solutions of each first-level branch are sorted
and the branches merged, so the stream is lexicographic in the image
sequence no matter how many workers ran. First mode branches on elements
in index order instead, so the depth-first walk itself is lexicographic
and the first match is the smallest one.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Iterator

from core.halfmorph import ElementMap, MapClassification, Verdict, classify_map
from core.errors import InvariantViolation
from core.identities import is_diassociative
from core.loop import LoopTable, element_order, two_sided_inverses

logger = logging.getLogger("halfloop.search")


@dataclass(frozen=True)
class SearchOptions:
    verdicts: frozenset[Verdict] | None = None
    first: bool = False
    workers: int = 1
    bijective: bool = True
    order_filter: bool = True

    @classmethod
    def proper_only(cls, **kwargs) -> SearchOptions:
        return cls(verdicts=frozenset({Verdict.PROPER}), **kwargs)


def generation_order(Q: LoopTable) -> list[int]:
    """Elements in the order a greedy generating set reaches them.

    Start from 0, take the smallest element not yet reached as the next
    generator, and sweep products of reached elements breadth-first.
    """
    rows = Q.rows
    seen = [0]
    reached = {0}
    while len(seen) < Q.order:
        g = next(x for x in range(Q.order) if x not in reached)
        seen.append(g)
        reached.add(g)
        frontier = [g]
        while frontier:
            fresh = []
            for u in frontier:
                for v in list(seen):
                    for p in (rows[u][v], rows[v][u]):
                        if p not in reached:
                            reached.add(p)
                            seen.append(p)
                            fresh.append(p)
            frontier = fresh
    return seen


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class HalfMorphismSearch:
    """One search problem; picklable so branches can run in worker processes."""

    def __init__(self, source: LoopTable, target: LoopTable, options: SearchOptions | None = None):
        self.source = source
        self.target = target
        self.options = options or SearchOptions()
        self.n = source.order
        self.m = target.order
        self.bijective = self.options.bijective
        self.impossible = self.bijective and self.n != self.m

        self.S = source.rows
        self.Sl = source.ldiv.tolist()
        self.Sr = source.rdiv.tolist()
        self.T = target.rows
        self.Tl = target.ldiv.tolist()
        self.Tr = target.rdiv.tolist()
        self.src_inv = two_sided_inverses(source)
        self.tgt_inv = two_sided_inverses(target)
        self.branch_order = list(range(self.n)) if self.options.first else generation_order(source)

        self.orders_match = (
            self.bijective
            and self.options.order_filter
            and not self.impossible
            and is_diassociative(source).holds
            and is_diassociative(target).holds
        )

    # ── Domains and propagation ───────────────────────────────────

    def initial_state(self) -> tuple[list[int], list[int], list[int]] | None:
        full = (1 << self.m) - 1
        doms = [full] * self.n
        doms[0] = 1
        if self.bijective:
            for x in range(1, self.n):
                doms[x] &= ~1
        if self.orders_match:
            src_orders = [element_order(self.source, x) for x in range(self.n)]
            tgt_orders = [element_order(self.target, v) for v in range(self.m)]
            for x in range(self.n):
                doms[x] &= sum(1 << v for v in range(self.m) if tgt_orders[v] == src_orders[x])
        if any(d == 0 for d in doms):
            return None
        assigned = [-1] * self.n
        done: list[int] = []
        queue = [x for x in range(self.n) if doms[x] & (doms[x] - 1) == 0]
        if not self._propagate(doms, assigned, done, queue):
            return None
        return doms, assigned, done

    def _propagate(self, doms: list[int], assigned: list[int], done: list[int], queue: list[int]) -> bool:
        S, Sl, Sr, T, Tl, Tr = self.S, self.Sl, self.Sr, self.T, self.Tl, self.Tr

        def constrain(z: int, allowed: int) -> bool:
            d = doms[z]
            nd = d & allowed
            if nd == 0:
                return False
            if nd != d:
                doms[z] = nd
                if nd & (nd - 1) == 0:
                    queue.append(z)
            return True

        while queue:
            x = queue.pop()
            if assigned[x] >= 0:
                continue
            v = doms[x].bit_length() - 1
            assigned[x] = v
            done.append(x)

            if self.bijective:
                clear = ~(1 << v)
                for y in range(self.n):
                    if y != x and not constrain(y, clear):
                        return False
            xi = self.src_inv[x]
            if xi >= 0 and self.tgt_inv[v] >= 0 and not constrain(xi, 1 << self.tgt_inv[v]):
                return False

            for y in done:
                w = assigned[y]
                vw, wv = T[v][w], T[w][v]
                pair = (1 << vw) | (1 << wv)
                if not (
                    constrain(S[x][y], pair)
                    and constrain(S[y][x], pair)
                    and constrain(Sl[x][y], (1 << Tl[v][w]) | (1 << Tr[w][v]))
                    and constrain(Sl[y][x], (1 << Tl[w][v]) | (1 << Tr[v][w]))
                    and constrain(Sr[y][x], (1 << Tr[w][v]) | (1 << Tl[v][w]))
                    and constrain(Sr[x][y], (1 << Tr[v][w]) | (1 << Tl[w][v]))
                ):
                    return False
        return True

    # ── Backtracking ──────────────────────────────────────────────

    def _next_variable(self, assigned: list[int]) -> int | None:
        for x in self.branch_order:
            if assigned[x] < 0:
                return x
        return None

    def _extend(self, doms: list[int], assigned: list[int], done: list[int], var: int, value: int):
        doms = doms[:]
        assigned = assigned[:]
        done = done[:]
        if not doms[var] >> value & 1:
            return None
        doms[var] = 1 << value
        if not self._propagate(doms, assigned, done, [var]):
            return None
        return doms, assigned, done

    def _dfs(self, doms: list[int], assigned: list[int], done: list[int]) -> Iterator[tuple[int, ...]]:
        var = self._next_variable(assigned)
        if var is None:
            yield tuple(assigned)
            return
        for value in _bits(doms[var]):
            state = self._extend(doms, assigned, done, var, value)
            if state is not None:
                yield from self._dfs(*state)

    def root_branches(self) -> tuple[int | None, list[int]]:
        """First branching variable and its candidate values after root propagation."""
        if self.impossible:
            return None, []
        state = self.initial_state()
        if state is None:
            return None, []
        doms, assigned, _ = state
        var = self._next_variable(assigned)
        if var is None:
            return None, [-1]
        return var, list(_bits(doms[var]))

    def solve_branch(self, value: int) -> list[tuple[int, ...]]:
        """Sorted solutions in the subtree where the first branch variable takes `value`.

        value -1 stands for the whole tree when root propagation already fixed everything.
        """
        state = self.initial_state()
        if state is None:
            return []
        if value >= 0:
            var = self._next_variable(state[1])
            state = self._extend(*state, var, value)
            if state is None:
                return []
        return sorted(self._dfs(*state))

    def stream(self) -> Iterator[tuple[int, ...]]:
        """Solutions lazily, in depth-first order of `branch_order`."""
        if self.impossible:
            return
        state = self.initial_state()
        if state is not None:
            yield from self._dfs(*state)

    def solve(self) -> list[tuple[int, ...]]:
        _, values = self.root_branches()
        return list(heapq.merge(*(self.solve_branch(v) for v in values)))


def _solve_branch(args: tuple[LoopTable, LoopTable, SearchOptions, int]) -> list[tuple[int, ...]]:
    source, target, options, value = args
    return HalfMorphismSearch(source, target, options).solve_branch(value)


def _sorted_images(search: HalfMorphismSearch) -> Iterator[tuple[int, ...]]:
    options = search.options
    _, values = search.root_branches()
    jobs = [(search.source, search.target, options, v) for v in values]
    if options.workers > 1 and len(jobs) > 1:
        logger.debug("Fanning %d branches over %d workers", len(jobs), options.workers)
        with ProcessPoolExecutor(max_workers=options.workers) as pool:
            results = list(pool.map(_solve_branch, jobs))
    else:
        results = [_solve_branch(job) for job in jobs]
    yield from heapq.merge(*results)


def _enumerate(
    source: LoopTable, target: LoopTable, options: SearchOptions
) -> Iterator[tuple[ElementMap, MapClassification]]:
    search = HalfMorphismSearch(source, target, options)
    # first mode walks the index-ordered tree lazily and stops at the first match
    stream = search.stream() if options.first else _sorted_images(search)
    produced = 0
    for images in stream:
        phi = ElementMap(source, target, images)
        c = classify_map(phi)
        if not c.is_half:
            raise InvariantViolation(f"search produced a non-half-homomorphism {images}")
        if options.verdicts is not None and c.verdict not in options.verdicts:
            continue
        produced += 1
        yield phi, c
        if options.first:
            break
    logger.debug("Search %r -> %r yielded %d maps", source, target, produced)


def enumerate_half_isomorphisms(
    source: LoopTable, target: LoopTable, options: SearchOptions | None = None
) -> Iterator[tuple[ElementMap, MapClassification]]:
    """All bijective half-isomorphisms source → target with their classifications.

    With `first`, stops at the lexicographically smallest map passing the verdict filter.
    """
    options = options or SearchOptions()
    if not options.bijective:
        options = replace(options, bijective=True)
    if source.order != target.order:
        return iter(())
    return _enumerate(source, target, options)


def enumerate_half_homomorphisms(
    source: LoopTable, target: LoopTable, options: SearchOptions | None = None
) -> Iterator[tuple[ElementMap, MapClassification]]:
    """All total maps fixing 0 that are half-homomorphisms, bijective or not."""
    options = options or SearchOptions()
    options = replace(options, bijective=False, order_filter=False)
    return _enumerate(source, target, options)


def brute_force_half_isomorphisms(source: LoopTable, target: LoopTable) -> list[tuple[ElementMap, MapClassification]]:
    """Every bijection checked directly; the oracle for the pruned search."""
    if source.order != target.order:
        return []
    found = []
    for perm in itertools.permutations(range(source.order)):
        phi = ElementMap(source, target, perm)
        c = classify_map(phi)
        if c.is_half:
            found.append((phi, c))
    return found
