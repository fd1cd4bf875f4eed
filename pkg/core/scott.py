"""
Scott Triples — Certificates for Proper Half-Isomorphisms of Moufang Loops

A Scott triple (a, b, c) for φ certifies:
  (i)   φ restricted to <a, b> is an isomorphism and ab ≠ ba
  (ii)  φ restricted to <a, c> is an anti-isomorphism and ac ≠ ca
  (iii) φ restricted to <b, c> is an isomorphism and bc ≠ cb

find_scott_triple replays the constructive argument with least choices;
the verifiers re-check each consequence independently and raise
TheoremViolation on any failure, since each one is a proved statement.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from core.errors import (
    NotDiassociative,
    NotProper,
    PreconditionError,
    SourceNotMoufang,
    TargetNotMoufang,
    TheoremViolation,
)
from core.halfmorph import (
    ABDecomposition,
    ElementMap,
    Verdict,
    ab_decomposition,
    classify_map,
    compose_with_inversion,
    pair_matrices,
    restriction_dichotomy,
)
from core.identities import is_associative_on, is_commutative_on, is_moufang
from core.loop import closure, left_divide, power
from core.structure import nucleus, squaring_report

logger = logging.getLogger("halfloop.scott")

CONDITIONS = (("i", "ab", True), ("ii", "ac", False), ("iii", "bc", True))


@dataclass(frozen=True)
class Certificate:
    condition: str
    pair: tuple[int, int]
    isomorphism: bool
    anti_isomorphism: bool
    noncommuting: bool

    @property
    def passed(self) -> bool:
        wants_iso = self.condition != "ii"
        holds = self.isomorphism if wants_iso else self.anti_isomorphism
        return holds and self.noncommuting


@dataclass(frozen=True)
class ScottTriple:
    a: int
    b: int
    c: int
    certificates: tuple[Certificate, ...] = ()
    inverted: bool = False

    def pairs(self) -> dict[str, tuple[int, int]]:
        return {"ab": (self.a, self.b), "ac": (self.a, self.c), "bc": (self.b, self.c)}

    def reversed(self) -> ScottTriple:
        return ScottTriple(self.c, self.b, self.a)


@dataclass(frozen=True)
class ScottCheck:
    certificates: tuple[Certificate, ...]

    @property
    def conditions(self) -> tuple[bool, ...]:
        return tuple(c.passed for c in self.certificates)

    @property
    def passed(self) -> bool:
        return all(self.conditions)


def _certificates(phi: ElementMap, t: ScottTriple) -> tuple[Certificate, ...]:
    S = phi.source.table
    pairs = t.pairs()
    out = []
    for label, key, _ in CONDITIONS:
        x, y = pairs[key]
        try:
            r = restriction_dichotomy(phi, x, y)
            iso, anti = r.isomorphism, r.anti_isomorphism
        except NotDiassociative:
            iso = anti = False
        out.append(Certificate(label, (x, y), iso, anti, bool(S[x, y] != S[y, x])))
    return tuple(out)


def _require_proper_moufang(phi: ElementMap) -> None:
    verdict = classify_map(phi).verdict
    if verdict is not Verdict.PROPER:
        raise NotProper(f"map is not a proper half-isomorphism (verdict {verdict.value})")
    if not is_moufang(phi.source).holds:
        raise SourceNotMoufang(f"source {phi.source!r} is not Moufang")
    if not is_moufang(phi.target).holds:
        raise TargetNotMoufang(f"target {phi.target!r} is not Moufang")


def find_scott_triple(phi: ElementMap) -> tuple[ElementMap, ScottTriple]:
    """Least a outside A ∪ B, least exclusively-direct b, least exclusively-reversed c.

    When φ is an anti-isomorphism on <b, c>, φ is replaced by x ↦ φ(x⁻¹)
    and the roles of b and c swap.
    """
    _require_proper_moufang(phi)
    ab = ab_decomposition(phi)
    if not ab.outside:
        raise TheoremViolation("A ∪ B covers the loop for a proper half-isomorphism")
    a = ab.outside[0]
    direct, reverse = pair_matrices(phi)
    S = phi.source.table

    only_direct = np.flatnonzero(direct[a] & ~reverse[a])
    only_reversed = np.flatnonzero(reverse[a] & ~direct[a])
    if only_direct.size == 0 or only_reversed.size == 0:
        raise TheoremViolation(f"element {a} outside A ∪ B lacks an exclusively direct or reversed partner")
    b, c = int(only_direct[0]), int(only_reversed[0])
    for x in (b, c):
        if S[a, x] == S[x, a]:
            raise TheoremViolation(f"exclusive pair ({a}, {x}) commutes")

    r = restriction_dichotomy(phi, b, c)
    if r.isomorphism and r.anti_isomorphism:
        raise TheoremViolation(f"<{b}, {c}> is abelian under φ")
    inverted = False
    if not r.isomorphism:
        phi = compose_with_inversion(phi)
        b, c = c, b
        inverted = True

    triple = ScottTriple(a, b, c, inverted=inverted)
    triple = ScottTriple(a, b, c, _certificates(phi, triple), inverted)
    if not all(cert.passed for cert in triple.certificates):
        raise TheoremViolation(f"constructed triple {(a, b, c)} fails its certificates")
    logger.info("Scott triple %s (inverted=%s)", (a, b, c), inverted)
    return phi, triple


def verify_scott_triple(phi: ElementMap, t: ScottTriple) -> ScottCheck:
    return ScottCheck(_certificates(phi, t))


# ── Consequences ──────────────────────────────────────────────────


@dataclass(frozen=True)
class AbelianSquares:
    a_squared_c: bool
    a_c_squared: bool
    reversed_triple: bool

    @property
    def passed(self) -> bool:
        return self.a_squared_c and self.a_c_squared and self.reversed_triple


def _abelian_group(Q, gens) -> bool:
    elems = np.flatnonzero(closure(Q, gens))
    return is_associative_on(Q, elems) and is_commutative_on(Q, elems)


def verify_abelian_squares(phi: ElementMap, t: ScottTriple) -> AbelianSquares:
    """<a², c> and <a, c²> are abelian groups, and (c, b, a) is again a Scott triple."""
    if not verify_scott_triple(phi, t).passed:
        raise PreconditionError(f"{(t.a, t.b, t.c)} is not a Scott triple")
    Q = phi.source
    report = AbelianSquares(
        a_squared_c=_abelian_group(Q, [power(Q, t.a, 2), t.c]),
        a_c_squared=_abelian_group(Q, [t.a, power(Q, t.c, 2)]),
        reversed_triple=verify_scott_triple(phi, t.reversed()).passed,
    )
    if not report.passed:
        raise TheoremViolation(f"abelian-square consequences fail for {(t.a, t.b, t.c)}", report=report.__dict__)
    return report


@dataclass(frozen=True)
class ContradictionReport:
    hypothesis_holds: bool
    reachable: bool
    steps: dict = field(default_factory=dict)


def verify_main_hypothesis_contradiction(phi: ElementMap, t: ScottTriple) -> ContradictionReport:
    """Replay the squaring argument; reaching the end means a counterexample.

    When squaring on Q/N(Q) is not surjective the argument never starts and
    the report says so. Otherwise d with d²N = aN and n = a\\d² are located,
    every intermediate claim is recorded, and TheoremViolation is raised.
    """
    _require_proper_moufang(phi)
    if not verify_scott_triple(phi, t).passed:
        raise PreconditionError(f"{(t.a, t.b, t.c)} is not a Scott triple")
    Q = phi.source
    N = nucleus(Q)
    q, squaring = squaring_report(Q, N)
    if not squaring.surjective:
        return ContradictionReport(False, False)

    target_class = q.project(t.a)
    d = next(x for x in range(Q.order) if q.project(power(Q, x, 2)) == target_class)
    n = left_divide(Q, t.a, power(Q, d, 2))
    an = int(Q.table[t.a, n])
    steps = {
        "d": d,
        "n": n,
        "n_in_nucleus": n in N,
        "dbc_scott": verify_scott_triple(phi, ScottTriple(d, t.b, t.c)).passed,
        "nd_abelian": _abelian_group(Q, [n, d]),
        "nc_abelian": _abelian_group(Q, [n, t.c]),
        "an_c_abelian": _abelian_group(Q, [an, t.c]),
        "ac_abelian": _abelian_group(Q, [t.a, t.c]),
    }
    logger.error("Squaring hypothesis holds alongside a proper half-isomorphism: %s", steps)
    raise TheoremViolation(
        "proper half-isomorphism of a Moufang loop whose Q/N has surjective squaring",
        images=list(phi.images),
        triple=[t.a, t.b, t.c],
        steps=steps,
    )


# ── Full analysis of one proper map ───────────────────────────────


@dataclass(frozen=True)
class ScottAnalysis:
    phi: ElementMap
    triple: ScottTriple
    check: ScottCheck
    squares: AbelianSquares
    decomposition: ABDecomposition
    contradiction: ContradictionReport


def analyse_proper_map(phi: ElementMap) -> ScottAnalysis:
    _require_proper_moufang(phi)
    decomposition = ab_decomposition(phi)
    if decomposition.covers:
        raise TheoremViolation("A ∪ B covers the loop for a proper half-isomorphism")
    used, triple = find_scott_triple(phi)
    check = verify_scott_triple(used, triple)
    if not check.passed:
        raise TheoremViolation(f"found triple {(triple.a, triple.b, triple.c)} does not verify")
    squares = verify_abelian_squares(used, triple)
    contradiction = verify_main_hypothesis_contradiction(used, triple)
    return ScottAnalysis(used, triple, check, squares, decomposition, contradiction)
