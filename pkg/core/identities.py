"""
Identities — Group, Commutative, Moufang, Diassociative, Automorphic

Each check is an exhaustive numpy scan that returns an IdentityReport with
the lexicographically smallest witness on failure. Associativity-type
witnesses are triples (x, y, z) with lhs = (xy)z and rhs = x(yz).

Reports are memoised per table; LoopTable is immutable and hashable.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from core.errors import InvariantViolation
from core.loop import LoopTable, closure, first_associativity_failure

logger = logging.getLogger("halfloop.identities")


@dataclass(frozen=True)
class IdentityReport:
    property: str
    holds: bool
    witness: tuple[int, ...] | None = None
    lhs: int | None = None
    rhs: int | None = None
    detail: str = ""

    def __post_init__(self) -> None:
        if self.holds != (self.witness is None):
            raise InvariantViolation(f"{self.property}: witness must be present iff the identity fails")

    def __bool__(self) -> bool:
        return self.holds


def _first(bad: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(bad)
    return None if hits.size == 0 else tuple(int(v) for v in hits[0])


def _report(name: str, lhs: np.ndarray, rhs: np.ndarray, detail: str = "") -> IdentityReport:
    at = _first(lhs != rhs)
    if at is None:
        return IdentityReport(name, True, detail=detail)
    return IdentityReport(name, False, at, int(lhs[at]), int(rhs[at]), detail)


# ── Associativity and commutativity ───────────────────────────────


@lru_cache(maxsize=4096)
def is_group(Q: LoopTable) -> IdentityReport:
    T = Q.table
    x, y, z = np.indices((Q.order,) * 3)
    return _report("group", T[T[x, y], z], T[x, T[y, z]])


@lru_cache(maxsize=4096)
def is_commutative(Q: LoopTable) -> IdentityReport:
    return _report("commutative", Q.table, Q.table.T)


# ── Moufang ───────────────────────────────────────────────────────


def moufang_identities(Q: LoopTable) -> list[IdentityReport]:
    """The three Moufang identities, each over all (x, y, z)."""
    T = Q.table
    x, y, z = np.indices((Q.order,) * 3)
    return [
        _report("moufang", T[T[x, y], T[z, x]], T[x, T[T[y, z], x]], "xy·zx = x(yz·x)"),
        _report("moufang", T[T[T[x, y], x], z], T[x, T[y, T[x, z]]], "(xy·x)z = x(y·xz)"),
        _report("moufang", T[T[T[z, x], y], x], T[z, T[x, T[y, x]]], "(zx·y)x = z(x·yx)"),
    ]


@lru_cache(maxsize=4096)
def is_moufang(Q: LoopTable) -> IdentityReport:
    reports = moufang_identities(Q)
    verdicts = {r.holds for r in reports}
    if len(verdicts) != 1:
        raise InvariantViolation(
            f"Moufang identities disagree on {Q!r}",
            verdicts=[r.holds for r in reports],
        )
    return reports[0]


# ── Diassociativity ───────────────────────────────────────────────


@lru_cache(maxsize=4096)
def two_generated_subloops(Q: LoopTable) -> tuple[tuple[int, ...], ...]:
    """Row-major n×n tuple of bitmasks; entry a*n+b is the mask of <a, b>."""
    n = Q.order
    out = [0] * (n * n)
    for a in range(n):
        for b in range(a, n):
            idx = np.flatnonzero(closure(Q, [a, b]))
            mask = sum(1 << int(i) for i in idx)
            out[a * n + b] = out[b * n + a] = mask
    return tuple(out)


def mask_elements(mask: int) -> np.ndarray:
    return np.array([i for i in range(mask.bit_length()) if mask >> i & 1], dtype=np.int64)


@lru_cache(maxsize=4096)
def is_diassociative(Q: LoopTable) -> IdentityReport:
    """Alternative and flexible laws first, then associativity of every <a, b>.

    The cheap laws catch most failures and give the natural witness, e.g.
    (x, x, y) for a left-alternative failure.
    """
    T = Q.table
    x, y = np.indices((Q.order, Q.order))
    laws = [
        ("left alternative", lambda: (T[T[x, x], y], T[x, T[x, y]], lambda a, b: (a, a, b))),
        ("right alternative", lambda: (T[T[y, x], x], T[y, T[x, x]], lambda a, b: (b, a, a))),
        ("flexible", lambda: (T[T[x, y], x], T[x, T[y, x]], lambda a, b: (a, b, a))),
    ]
    for detail, build in laws:
        lhs, rhs, triple = build()
        at = _first(lhs != rhs)
        if at is not None:
            return IdentityReport("diassociative", False, triple(*at), int(lhs[at]), int(rhs[at]), detail)

    n = Q.order
    masks = two_generated_subloops(Q)
    seen: set[int] = set()
    for a in range(n):
        for b in range(a, n):
            mask = masks[a * n + b]
            if mask in seen:
                continue
            seen.add(mask)
            witness = first_associativity_failure(Q, mask_elements(mask))
            if witness is not None:
                u, v, w = witness
                return IdentityReport(
                    "diassociative", False, witness,
                    int(T[T[u, v], w]), int(T[u, T[v, w]]), f"<{a}, {b}> is not associative",
                )
    return IdentityReport("diassociative", True)


# ── Automorphic ───────────────────────────────────────────────────


def inner_mapping_generators(Q: LoopTable) -> tuple[np.ndarray, list[str]]:
    """Stack of the maps L(x,y), R(x,y), T(x) as rows of an (m, n) array.

    L(x,y): z ↦ (xy)\\(x(yz))
    R(x,y): z ↦ ((zy)x)/(yx)
    T(x):   z ↦ x\\(zx)
    """
    T, ld, rd = Q.table, Q.ldiv, Q.rdiv
    n = Q.order
    x, y, z = np.indices((n, n, n))
    L = ld[T[x, y], T[x, T[y, z]]].reshape(n * n, n)
    R = rd[T[T[z, y], x], T[y, x]].reshape(n * n, n)
    xs, zs = np.indices((n, n))
    Tm = ld[xs, T[zs, xs]]
    labels = (
        [f"L({a},{b})" for a in range(n) for b in range(n)]
        + [f"R({a},{b})" for a in range(n) for b in range(n)]
        + [f"T({a})" for a in range(n)]
    )
    return np.vstack([L, R, Tm]), labels


def automorphism_failures(Q: LoopTable, maps: np.ndarray) -> np.ndarray:
    """bad[k, u, v] is True where maps[k] fails f(uv) = f(u)f(v)."""
    T = Q.table
    return maps[:, T] != T[maps[:, :, None], maps[:, None, :]]


@lru_cache(maxsize=4096)
def is_automorphic(Q: LoopTable) -> IdentityReport:
    maps, labels = inner_mapping_generators(Q)
    T = Q.table
    bad = automorphism_failures(Q, maps)
    at = _first(bad)
    if at is None:
        return IdentityReport("automorphic", True)
    k, u, v = at
    f = maps[k]
    return IdentityReport(
        "automorphic", False, (u, v), int(f[T[u, v]]), int(T[f[u], f[v]]),
        f"{labels[k]} is not an automorphism",
    )


def identity_reports(Q: LoopTable) -> dict[str, IdentityReport]:
    reports = {
        "group": is_group(Q),
        "commutative": is_commutative(Q),
        "moufang": is_moufang(Q),
        "diassociative": is_diassociative(Q),
        "automorphic": is_automorphic(Q),
    }
    if reports["group"].holds and not reports["moufang"].holds:
        raise InvariantViolation(f"{Q!r} is a group but not Moufang")
    if reports["moufang"].holds and not reports["diassociative"].holds:
        raise InvariantViolation(f"{Q!r} is Moufang but not diassociative")
    return reports


def is_associative_on(Q: LoopTable, elements: np.ndarray) -> bool:
    return first_associativity_failure(Q, elements) is None


def is_commutative_on(Q: LoopTable, elements: np.ndarray) -> bool:
    sub = Q.table[np.ix_(elements, elements)]
    return bool((sub == sub.T).all())
