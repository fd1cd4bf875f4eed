"""
Structure — Subloops, Nucleus, Normality, Quotients, Squaring

Everything here is set arithmetic on the Cayley table. A subset is carried
as a sorted tuple of elements; numpy fancy indexing does the translations
xH, Hx and their compositions in one shot.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from core.errors import InputError, InvariantViolation, NormalityWitnessError, NotASubloop, TheoremViolation
from core.identities import inner_mapping_generators, is_automorphic, is_moufang
from core.loop import LoopTable, associativity_cube, check_element, closure, power

logger = logging.getLogger("halfloop.structure")


@dataclass(frozen=True)
class SubloopSet:
    parent: LoopTable = field(repr=False)
    elements: tuple[int, ...]

    @classmethod
    def of(cls, parent: LoopTable, elements: Iterable[int]) -> SubloopSet:
        """Validate closure under · \\ and / and wrap."""
        elems = tuple(sorted({check_element(parent, e) for e in elements}))
        if not elems or elems[0] != 0:
            raise NotASubloop("a subloop must contain 0", elements=list(elems))
        idx = np.array(elems)
        grid = np.ix_(idx, idx)
        inside = np.zeros(parent.order, dtype=bool)
        inside[idx] = True
        for label, table in (("product", parent.table), ("left quotient", parent.ldiv), ("right quotient", parent.rdiv)):
            escaped = np.argwhere(~inside[table[grid]])
            if escaped.size:
                i, j = escaped[0]
                raise NotASubloop(
                    f"{label} of {int(idx[i])} and {int(idx[j])} leaves the set",
                    elements=list(elems),
                )
        return cls(parent, elems)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.int64)

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.elements)] = True
        return m

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def is_trivial(self) -> bool:
        return self.order == 1

    def __contains__(self, x: object) -> bool:
        return x in self.elements

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def generated_subloop(Q: LoopTable, X: Iterable[int]) -> SubloopSet:
    seeds = list(X)
    if not seeds:
        raise InputError("cannot generate a subloop from an empty set")
    mask = closure(Q, seeds)
    return SubloopSet(Q, tuple(int(i) for i in np.flatnonzero(mask)))


def nucleus(Q: LoopTable) -> SubloopSet:
    """Elements associating with every pair in all three positions."""
    cube = associativity_cube(Q)
    left = cube.all(axis=(1, 2))
    middle = cube.all(axis=(0, 2))
    right = cube.all(axis=(0, 1))
    members = np.flatnonzero(left & middle & right)
    try:
        return SubloopSet.of(Q, members.tolist())
    except NotASubloop as e:
        raise TheoremViolation(f"nucleus of {Q!r} is not a subloop: {e.message}") from e


# ── Normality ─────────────────────────────────────────────────────


def _sorted_sets(images: np.ndarray) -> np.ndarray:
    return np.sort(images, axis=-1)


def normality_witness(Q: LoopTable, H: SubloopSet) -> tuple[str, int, int] | None:
    """First (condition, x, y) where a coset equation fails, or None when H is normal.

    Conditions: xH = Hx, (Hx)y = H(xy), y(xH) = (yx)H, (xH)y = x(Hy).
    Every side is an image of H under a composition of translations, so two
    sides are equal as sets iff their sorted images agree.
    """
    if H.parent is not Q and not H.parent.same_table(Q):
        raise InputError("subloop belongs to a different loop")
    SubloopSet.of(Q, H.elements)
    T = Q.table
    n = Q.order
    h = H.array
    xs = np.arange(n)

    xH = T[xs[:, None], h[None, :]]
    Hx = T[h[None, :], xs[:, None]]
    bad = np.flatnonzero((_sorted_sets(xH) != _sorted_sets(Hx)).any(axis=1))
    if bad.size:
        return ("xH = Hx", int(bad[0]), 0)

    x = xs[:, None, None]
    y = xs[None, :, None]
    hh = h[None, None, :]
    conditions = [
        ("(Hx)y = H(xy)", T[T[hh, x], y], T[hh, T[x, y]]),
        ("y(xH) = (yx)H", T[y, T[x, hh]], T[T[y, x], hh]),
        ("(xH)y = x(Hy)", T[T[x, hh], y], T[x, T[hh, y]]),
    ]
    for label, lhs, rhs in conditions:
        bad = np.argwhere((_sorted_sets(lhs) != _sorted_sets(rhs)).any(axis=2))
        if bad.size:
            return (label, int(bad[0][0]), int(bad[0][1]))
    return None


def is_normal(Q: LoopTable, H: SubloopSet) -> bool:
    return normality_witness(Q, H) is None


def is_normal_by_inner_mappings(Q: LoopTable, H: SubloopSet) -> bool:
    """H is normal iff every inner mapping generator maps H onto H."""
    maps, _ = inner_mapping_generators(Q)
    mask = H.mask
    return bool(mask[maps[:, H.array]].all())


# ── Quotients ─────────────────────────────────────────────────────


@dataclass(frozen=True)
class QuotientLoop:
    parent: LoopTable = field(repr=False)
    kernel: SubloopSet = field(repr=False)
    cosets: tuple[tuple[int, ...], ...]
    table: LoopTable
    projection: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.table.order

    def project(self, x: int) -> int:
        return self.projection[check_element(self.parent, x)]

    def coset_of(self, x: int) -> tuple[int, ...]:
        return self.cosets[self.project(x)]


def quotient(Q: LoopTable, H: SubloopSet) -> QuotientLoop:
    """Q/H on cosets xH, indexed in order of their smallest element.

    The caller guarantees normality; the construction re-checks that the
    cosets partition Q and that the product is well defined, and raises
    NormalityWitnessError on the first offending pair of representatives.
    """
    T = Q.table
    n = Q.order
    h = H.array
    left_cosets = np.sort(T[np.arange(n)[:, None], h[None, :]], axis=1)
    distinct = sorted({tuple(int(v) for v in row) for row in left_cosets})
    projection = np.full(n, -1, dtype=np.int64)
    for index, coset in enumerate(distinct):
        if (projection[list(coset)] != -1).any():
            x = int(np.flatnonzero(projection[list(coset)] != -1)[0])
            raise NormalityWitnessError(
                f"cosets of {H.elements} overlap without coinciding", x=coset[x], y=coset[0]
            )
        projection[list(coset)] = index

    reps = np.array([c[0] for c in distinct])
    qtable = projection[T[np.ix_(reps, reps)]]
    mismatch = np.argwhere(projection[T] != qtable[projection[:, None], projection[None, :]])
    if mismatch.size:
        x, y = (int(v) for v in mismatch[0])
        raise NormalityWitnessError(
            f"coset product not well defined at representatives {x}, {y}", x=x, y=y
        )
    name = f"{Q.name}/{len(h)}" if Q.name else None
    try:
        table = LoopTable(qtable, name=name)
    except InputError as e:
        raise NormalityWitnessError(f"quotient table is not a loop: {e.message}", x=0, y=0) from e
    return QuotientLoop(Q, H, tuple(distinct), table, tuple(int(v) for v in projection))


# ── Squaring on the quotient ──────────────────────────────────────


@dataclass(frozen=True)
class SquaringReport:
    surjective: bool
    injective: bool
    image: tuple[int, ...]
    quotient_order: int


def squaring_report(Q: LoopTable, H: SubloopSet) -> tuple[QuotientLoop, SquaringReport]:
    q = quotient(Q, H)
    squares = np.diagonal(q.table.table)
    image = tuple(sorted({int(v) for v in squares}))
    surjective = len(image) == q.order
    injective = len(set(squares.tolist())) == len(squares)
    if surjective != injective:
        raise InvariantViolation(
            f"squaring on {Q!r}/{H.elements} is surjective={surjective} but injective={injective}"
        )
    return q, SquaringReport(surjective, injective, image, q.order)


def squaring_surjective(Q: LoopTable, H: SubloopSet) -> SquaringReport:
    return squaring_report(Q, H)[1]


def squaring_hypothesis(Q: LoopTable) -> bool:
    """Squaring on Q/N(Q) is surjective. Meaningful for Moufang loops."""
    return squaring_surjective(Q, nucleus(Q)).surjective


def squaring_census(loops: Iterable[LoopTable]) -> dict[str, int]:
    """Count Moufang loops by whether squaring on Q/N(Q) is surjective."""
    census = {"moufang": 0, "surjective": 0, "not_surjective": 0, "skipped": 0}
    for Q in loops:
        if not is_moufang(Q).holds:
            census["skipped"] += 1
            continue
        census["moufang"] += 1
        key = "surjective" if squaring_hypothesis(Q) else "not_surjective"
        census[key] += 1
    return census


def check_automorphic_exponent(Q: LoopTable) -> bool | None:
    """In an automorphic Moufang loop every element of Q/N(Q) cubes to 1.

    Returns None when Q is not automorphic Moufang, True when the exponent
    divides 3; raises TheoremViolation otherwise.
    """
    if not (is_moufang(Q).holds and is_automorphic(Q).holds):
        return None
    q = quotient(Q, nucleus(Q))
    for x in range(q.order):
        if power(q.table, x, 3) != 0:
            raise TheoremViolation(f"automorphic Moufang {Q!r} has Q/N element {x} of order not dividing 3")
    return True
