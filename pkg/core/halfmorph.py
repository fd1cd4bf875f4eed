"""
Half-Morphisms — Classification and the Lemma Layer

A map φ: Q → Q' is a half-homomorphism when every product lands on one of
the two possible orders: φ(xy) ∈ {φx·φy, φy·φx}. A pair (x, y) is direct
when the first equation holds and reversed when the second does; a pair
whose image commutes is both.

Verdicts for bijections: Isomorphism when every pair is direct,
AntiIsomorphism when every pair is reversed (Isomorphism wins when both
hold, i.e. for commutative images), ProperHalfIsomorphism otherwise.
Non-bijective maps only ever earn HalfHomomorphism.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from itertools import combinations
from pathlib import Path

import numpy as np
from pydantic import ValidationError

from core.errors import InputError, NotASubloop, NotDiassociative, PreconditionError, TheoremViolation
from core.identities import is_diassociative, is_moufang, mask_elements, two_generated_subloops
from core.loop import LoopTable, first_associativity_failure, two_sided_inverses
from core.structure import SubloopSet, is_normal
from models.schemas import MapFile

logger = logging.getLogger("halfloop.halfmorph")


class Verdict(str, Enum):
    ISOMORPHISM = "Isomorphism"
    ANTI_ISOMORPHISM = "AntiIsomorphism"
    PROPER = "ProperHalfIsomorphism"
    HALF_HOMOMORPHISM = "HalfHomomorphism"
    NOT_HALF = "NotHalfHomomorphism"


@dataclass(frozen=True, eq=False)
class ElementMap:
    source: LoopTable = field(repr=False)
    target: LoopTable = field(repr=False)
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(v) for v in self.images)
        if len(images) != self.source.order:
            raise InputError(f"map has {len(images)} images for a source of order {self.source.order}")
        bad = [v for v in images if not 0 <= v < self.target.order]
        if bad:
            raise InputError(f"image {bad[0]} outside target carrier 0..{self.target.order - 1}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, source: LoopTable, target: LoopTable | None = None) -> ElementMap:
        return cls(source, target or source, tuple(range(source.order)))

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.images, dtype=np.int64)

    @property
    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(set(self.images)) == len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ElementMap):
            return NotImplemented
        return (
            self.images == other.images
            and self.source.same_table(other.source)
            and self.target.same_table(other.target)
        )

    def __hash__(self) -> int:
        return hash(self.images)


@dataclass(frozen=True)
class MapClassification:
    verdict: Verdict
    bijective: bool
    direct_pairs: int
    reversed_pairs: int
    all_direct: bool
    all_reversed: bool
    proper_witnesses: tuple[tuple[int, int], tuple[int, int]] | None = None
    violation: tuple[int, int] | None = None

    @property
    def is_half(self) -> bool:
        return self.verdict is not Verdict.NOT_HALF


def pair_matrices(phi: ElementMap) -> tuple[np.ndarray, np.ndarray]:
    """direct[x, y] and reversed[x, y] as boolean n×n arrays."""
    img = phi.array
    S, T = phi.source.table, phi.target.table
    lhs = img[S]
    forward = T[np.ix_(img, img)]
    return lhs == forward, lhs == forward.T


def classify_map(phi: ElementMap) -> MapClassification:
    direct, reverse = pair_matrices(phi)
    bijective = phi.is_bijective
    counts = dict(direct_pairs=int(direct.sum()), reversed_pairs=int(reverse.sum()))
    all_direct, all_reversed = bool(direct.all()), bool(reverse.all())
    neither = np.argwhere(~(direct | reverse))
    if neither.size:
        x, y = (int(v) for v in neither[0])
        return MapClassification(
            Verdict.NOT_HALF, bijective, **counts, all_direct=all_direct,
            all_reversed=all_reversed, violation=(x, y),
        )
    if not bijective:
        return MapClassification(
            Verdict.HALF_HOMOMORPHISM, False, **counts, all_direct=all_direct, all_reversed=all_reversed
        )
    if all_direct:
        verdict = Verdict.ISOMORPHISM
    elif all_reversed:
        verdict = Verdict.ANTI_ISOMORPHISM
    else:
        only_direct = np.argwhere(direct & ~reverse)[0]
        only_reversed = np.argwhere(reverse & ~direct)[0]
        witnesses = (
            (int(only_direct[0]), int(only_direct[1])),
            (int(only_reversed[0]), int(only_reversed[1])),
        )
        return MapClassification(
            Verdict.PROPER, True, **counts, all_direct=False, all_reversed=False,
            proper_witnesses=witnesses,
        )
    return MapClassification(verdict, True, **counts, all_direct=all_direct, all_reversed=all_reversed)


def compose_with_inversion(phi: ElementMap) -> ElementMap:
    """x ↦ φ(x⁻¹)."""
    inv = two_sided_inverses(phi.source)
    if -1 in inv:
        raise PreconditionError("source has elements without two-sided inverses")
    return ElementMap(phi.source, phi.target, tuple(phi.images[i] for i in inv))


def _require_half_isomorphism(phi: ElementMap) -> MapClassification:
    c = classify_map(phi)
    if not c.is_half or not c.bijective:
        raise PreconditionError(
            f"map is not a half-isomorphism (verdict {c.verdict.value})",
            violation=list(c.violation) if c.violation else None,
        )
    return c


# ── Basic lemma ───────────────────────────────────────────────────


@dataclass(frozen=True)
class LemmaPart:
    passed: bool
    witness: tuple[int, ...] | None = None
    detail: str = ""


@dataclass(frozen=True)
class LemmaReport:
    parts: dict[str, LemmaPart]

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.parts.values())


def check_basic_lemma(phi: ElementMap) -> LemmaReport:
    """Commuting pairs, direct-pair symmetry, identity and inverses, generated subloops."""
    _require_half_isomorphism(phi)
    S, T = phi.source.table, phi.target.table
    img = phi.array
    direct, _ = pair_matrices(phi)
    parts: dict[str, LemmaPart] = {}

    commuting = S == S.T
    image_commutes = T[np.ix_(img, img)] == T[np.ix_(img, img)].T
    bad = np.argwhere(commuting & ~image_commutes)
    parts["commuting"] = LemmaPart(bad.size == 0, tuple(int(v) for v in bad[0]) if bad.size else None)

    bad = np.argwhere(direct & ~direct.T)
    parts["direct_symmetry"] = LemmaPart(bad.size == 0, tuple(int(v) for v in bad[0]) if bad.size else None)

    parts["identity_inverse"] = _check_inverses(phi)
    parts["generated_subloops"] = _check_generated(phi)
    return LemmaReport(parts)


def _check_inverses(phi: ElementMap) -> LemmaPart:
    if phi.images[0] != 0:
        return LemmaPart(False, (0,), "identity not fixed")
    src = two_sided_inverses(phi.source)
    tgt = two_sided_inverses(phi.target)
    for x, xi in enumerate(src):
        if xi < 0:
            continue
        if tgt[phi.images[x]] != phi.images[xi]:
            return LemmaPart(False, (x,), "inverse not preserved")
    return LemmaPart(True)


def _mask_of(elements) -> int:
    return sum(1 << int(e) for e in elements)


def _check_generated(phi: ElementMap) -> LemmaPart:
    n = phi.source.order
    src = two_generated_subloops(phi.source)
    tgt = two_generated_subloops(phi.target)
    m = phi.target.order
    for a in range(n):
        for b in range(a, n):
            image = _mask_of(phi.images[e] for e in mask_elements(src[a * n + b]))
            if image != tgt[phi.images[a] * m + phi.images[b]]:
                return LemmaPart(False, (a, b), "image of <a, b> is not <φa, φb>")
    return LemmaPart(True)


# ── Restriction dichotomy ─────────────────────────────────────────


@dataclass(frozen=True)
class RestrictionVerdict:
    generators: tuple[int, int]
    elements: tuple[int, ...]
    isomorphism: bool
    anti_isomorphism: bool
    image_associative: bool

    @property
    def neither(self) -> bool:
        return not (self.isomorphism or self.anti_isomorphism)


def restriction_dichotomy(phi: ElementMap, a: int, b: int) -> RestrictionVerdict:
    """Whether φ restricted to <a, b> is an isomorphism, an anti-isomorphism or both.

    The dichotomy is a theorem only when φ maps <a, b> onto an associative
    <φa, φb>; otherwise the computed verdict is returned, which may be neither.
    """
    _require_half_isomorphism(phi)
    return _restrict(phi, a, b)


@lru_cache(maxsize=65536)
def _pair_subloop(Q: LoopTable, a: int, b: int) -> tuple[np.ndarray, tuple[int, int, int] | None]:
    """Elements of <a, b> and its first associativity failure, memoised per table."""
    elems = mask_elements(two_generated_subloops(Q)[a * Q.order + b])
    return elems, first_associativity_failure(Q, elems)


def _restrict(phi: ElementMap, a: int, b: int) -> RestrictionVerdict:
    elems, witness = _pair_subloop(phi.source, a, b)
    if witness is not None:
        raise NotDiassociative((a, b), witness)

    img = phi.array
    S, T = phi.source.table, phi.target.table
    sub = np.ix_(elems, elems)
    lhs = img[S[sub]]
    forward = T[np.ix_(img[elems], img[elems])]
    iso = bool((lhs == forward).all())
    anti = bool((lhs == forward.T).all())
    image_elems, image_witness = _pair_subloop(phi.target, phi.images[a], phi.images[b])
    image_assoc = image_witness is None

    verdict = RestrictionVerdict((a, b), tuple(int(e) for e in elems), iso, anti, image_assoc)
    onto = set(img[elems].tolist()) == set(image_elems.tolist())
    if image_assoc and onto:
        forced_direct = phi.images[int(S[a, b])] == int(T[phi.images[a], phi.images[b]])
        forced_reversed = phi.images[int(S[a, b])] == int(T[phi.images[b], phi.images[a]])
        if (forced_direct and not iso) or (forced_reversed and not anti) or verdict.neither:
            raise TheoremViolation(
                f"restriction of a half-isomorphism to <{a}, {b}> breaks the group dichotomy",
                isomorphism=iso, anti_isomorphism=anti,
            )
    return verdict


def restriction_failures(phi: ElementMap) -> list[tuple[int, int]]:
    """Pairs (a, b), a <= b, whose restriction is neither iso nor anti."""
    _require_half_isomorphism(phi)
    n = phi.source.order
    return [(a, b) for a in range(n) for b in range(a, n) if _restrict(phi, a, b).neither]


# ── Semi-isomorphism ──────────────────────────────────────────────


@dataclass(frozen=True)
class SemiReport:
    holds: bool
    identity_fixed: bool
    left_witness: tuple[int, int] | None = None
    right_witness: tuple[int, int] | None = None


def is_semi_isomorphism(phi: ElementMap) -> SemiReport:
    """φ(0) = 0 and φ(xyx) = φx·φy·φx, checked under both bracketings of the image."""
    img = phi.array
    S, T = phi.source.table, phi.target.table
    n = phi.source.order
    x, y = np.indices((n, n))
    lhs = img[S[S[x, y], x]]
    fx, fy = img[x], img[y]
    left = T[T[fx, fy], fx]
    right = T[fx, T[fy, fx]]
    lw = np.argwhere(lhs != left)
    rw = np.argwhere(lhs != right)
    fixed = phi.images[0] == 0
    return SemiReport(
        holds=fixed and lw.size == 0 and rw.size == 0,
        identity_fixed=fixed,
        left_witness=(int(lw[0][0]), int(lw[0][1])) if lw.size else None,
        right_witness=(int(rw[0][0]), int(rw[0][1])) if rw.size else None,
    )


# ── A/B decomposition ─────────────────────────────────────────────


@dataclass(frozen=True)
class ABDecomposition:
    A: tuple[int, ...]
    B: tuple[int, ...]
    order: int

    @property
    def covers(self) -> bool:
        return len(set(self.A) | set(self.B)) == self.order

    @property
    def outside(self) -> list[int]:
        union = set(self.A) | set(self.B)
        return [x for x in range(self.order) if x not in union]


def ab_decomposition(phi: ElementMap) -> ABDecomposition:
    """A: elements whose every product is direct; B: every product reversed."""
    c = _require_half_isomorphism(phi)
    direct, reverse = pair_matrices(phi)
    A = tuple(int(a) for a in np.flatnonzero(direct.all(axis=1)))
    B = tuple(int(b) for b in np.flatnonzero(reverse.all(axis=1)))
    result = ABDecomposition(A, B, phi.source.order)

    if is_moufang(phi.source).holds and is_moufang(phi.target).holds:
        for label, members in (("A", A), ("B", B)):
            try:
                SubloopSet.of(phi.source, members)
            except NotASubloop as e:
                raise TheoremViolation(f"{label} is not a subloop: {e.message}") from e
        n = phi.source.order
        consistent = (
            (c.verdict is Verdict.ISOMORPHISM) == (len(A) == n)
            and (c.all_reversed == (len(B) == n))
            and ((c.verdict is Verdict.PROPER) == (len(A) < n and len(B) < n))
        )
        if not consistent:
            raise TheoremViolation(f"A/B sizes {len(A)}/{len(B)} disagree with verdict {c.verdict.value}")
        if c.verdict is Verdict.PROPER and result.covers:
            raise TheoremViolation("two proper subloops A and B cover the loop")
    return result


# ── Kernels ───────────────────────────────────────────────────────


def kernel(phi: ElementMap) -> SubloopSet:
    c = classify_map(phi)
    if not c.is_half or phi.images[0] != 0:
        raise PreconditionError(f"map is not a half-homomorphism fixing 0 (verdict {c.verdict.value})")
    members = [x for x, v in enumerate(phi.images) if v == 0]
    try:
        return SubloopSet.of(phi.source, members)
    except NotASubloop as e:
        raise TheoremViolation(f"kernel is not a subloop: {e.message}") from e


@dataclass
class KernelExperiment:
    half_homomorphisms: int = 0
    normal_kernels: int = 0
    non_normal_kernels: int = 0
    first_non_normal: tuple[tuple[int, ...], tuple[int, ...]] | None = None


def kernel_normality_experiment(maps) -> KernelExperiment:
    """Tally normal versus non-normal kernels over a stream of half-homomorphisms."""
    report = KernelExperiment()
    for phi in maps:
        report.half_homomorphisms += 1
        K = kernel(phi)
        if is_normal(phi.source, K):
            report.normal_kernels += 1
        else:
            report.non_normal_kernels += 1
            if report.first_non_normal is None:
                report.first_non_normal = (phi.images, K.elements)
                logger.info("Non-normal kernel %s for images %s", K.elements, phi.images)
    return report


# ── Map files ─────────────────────────────────────────────────────


def parse_map_file(text: str) -> MapFile:
    try:
        return MapFile.model_validate_json(text)
    except ValidationError as e:
        raise InputError(f"invalid map file: {e.errors()[0]['msg']}") from e


def load_map_file(path: str | Path) -> MapFile:
    try:
        return parse_map_file(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise InputError(f"cannot read map file {path}: {e}") from e


def map_to_file(phi: ElementMap) -> dict:
    return MapFile(
        source=phi.source.name or "source", target=phi.target.name or "target", images=list(phi.images)
    ).model_dump()


def dump_map(phi: ElementMap) -> str:
    return json.dumps(map_to_file(phi), sort_keys=True)


def noncommuting_pairs(Q: LoopTable) -> list[tuple[int, int]]:
    S = Q.table
    return [(a, b) for a, b in combinations(range(Q.order), 2) if S[a, b] != S[b, a]]


def diassociative_pair(phi: ElementMap) -> bool:
    return is_diassociative(phi.source).holds and is_diassociative(phi.target).holds
