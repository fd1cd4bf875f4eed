"""
Sweep — Catalog-Wide Half-Isomorphism Census

Every ordered pair of equal-order loops in scope becomes an independent
job: enumerate all half-isomorphisms, run the lemma checks when both loops
are diassociative, and analyse each proper map. The theorem assertion is
that a Moufang source whose Q/N(Q) has surjective squaring admits no proper
half-isomorphism onto a Moufang target.

Jobs run inline or in a process pool; outcomes are merged by pair index so
the report does not depend on completion order. Progress goes to the
EventBus.
"""

from __future__ import annotations

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from core.catalog import CatalogEntry, Provenance
from core.errors import TheoremViolation, TrapError
from core.events import EventBus
from core.halfmorph import (
    ElementMap,
    Verdict,
    ab_decomposition,
    check_basic_lemma,
    is_semi_isomorphism,
    restriction_failures,
)
from core.identities import is_diassociative, is_group, is_moufang
from core.scott import ScottTriple, analyse_proper_map
from core.search import SearchOptions, enumerate_half_isomorphisms
from core.structure import squaring_hypothesis

logger = logging.getLogger("halfloop.sweep")

VERDICT_KEYS = {
    Verdict.ISOMORPHISM: "iso",
    Verdict.ANTI_ISOMORPHISM: "anti",
    Verdict.PROPER: "proper",
}


@dataclass(frozen=True)
class PairJob:
    index: int
    source: CatalogEntry
    target: CatalogEntry
    max_findings: int = 25
    order_filter: bool = True


@dataclass
class Finding:
    images: tuple[int, ...]
    verdict: str
    a_set: tuple[int, ...]
    b_set: tuple[int, ...]
    covers: bool
    triple: ScottTriple | None = None
    inverted_images: tuple[int, ...] | None = None
    abelian_squares: bool | None = None
    hypothesis_holds: bool | None = None
    note: str = ""


@dataclass
class PairOutcome:
    index: int
    source: str
    target: str
    order: int
    moufang: tuple[bool, bool]
    groups: tuple[bool, bool]
    named: bool
    diassociative: tuple[bool, bool]
    hypothesis: bool | None
    counts: dict[str, int] = field(default_factory=lambda: {"iso": 0, "anti": 0, "proper": 0})
    maps_checked: int = 0
    lemma_checks: int = 0
    findings: list[Finding] = field(default_factory=list)
    findings_truncated: int = 0
    violation: str | None = None


def _lemma_suite(phi: ElementMap) -> None:
    report = check_basic_lemma(phi)
    if not report.passed:
        failed = {k: p.witness for k, p in report.parts.items() if not p.passed}
        raise TheoremViolation(f"basic lemma fails for {phi.images}: {failed}")
    semi = is_semi_isomorphism(phi)
    if not semi.holds:
        raise TheoremViolation(f"half-isomorphism {phi.images} is not a semi-isomorphism")
    neither = restriction_failures(phi)
    if neither:
        raise TheoremViolation(f"restriction of {phi.images} to <{neither[0]}> is neither iso nor anti")


def _finding(phi: ElementMap, moufang: tuple[bool, bool]) -> Finding:
    if all(moufang):
        analysis = analyse_proper_map(phi)
        return Finding(
            images=phi.images,
            verdict=Verdict.PROPER.value,
            a_set=analysis.decomposition.A,
            b_set=analysis.decomposition.B,
            covers=analysis.decomposition.covers,
            triple=analysis.triple,
            inverted_images=analysis.phi.images if analysis.triple.inverted else None,
            abelian_squares=analysis.squares.passed,
            hypothesis_holds=analysis.contradiction.hypothesis_holds,
        )
    ab = ab_decomposition(phi)
    side = "source" if not moufang[0] else "target"
    return Finding(
        images=phi.images,
        verdict=Verdict.PROPER.value,
        a_set=ab.A,
        b_set=ab.B,
        covers=ab.covers,
        note=f"{side} is not Moufang; Scott certificates not applicable",
    )


def run_pair(job: PairJob) -> PairOutcome:
    """Search one ordered pair. Traps are returned as text, never raised across processes."""
    S, T = job.source.loop, job.target.loop
    moufang = (is_moufang(S).holds, is_moufang(T).holds)
    outcome = PairOutcome(
        index=job.index,
        source=job.source.name,
        target=job.target.name,
        order=S.order,
        moufang=moufang,
        groups=(is_group(S).holds, is_group(T).holds),
        diassociative=(is_diassociative(S).holds, is_diassociative(T).holds),
        named=job.source.named and job.target.named,
        hypothesis=squaring_hypothesis(S) if moufang[0] else None,
    )
    lemmas = all(outcome.diassociative)
    try:
        options = SearchOptions(order_filter=job.order_filter)
        for phi, c in enumerate_half_isomorphisms(S, T, options):
            outcome.maps_checked += 1
            outcome.counts[VERDICT_KEYS[c.verdict]] += 1
            if lemmas:
                _lemma_suite(phi)
                outcome.lemma_checks += 1
            if c.verdict is not Verdict.PROPER:
                continue
            if all(moufang) and outcome.hypothesis:
                raise TheoremViolation(
                    f"proper half-isomorphism {phi.images} from {S.name} to {T.name} "
                    "although squaring on Q/N is surjective"
                )
            finding = _finding(phi, moufang)
            if len(outcome.findings) < job.max_findings:
                outcome.findings.append(finding)
            else:
                outcome.findings_truncated += 1
    except TrapError as e:
        outcome.violation = f"{type(e).__name__}: {e.message}"
    return outcome


def run_chunk(jobs: list[PairJob]) -> list[PairOutcome]:
    return [run_pair(job) for job in jobs]


# ── Pair selection ────────────────────────────────────────────────


def build_jobs(
    entries: Iterable[CatalogEntry], max_findings: int = 25, order_filter: bool = True
) -> list[PairJob]:
    """Ordered equal-order pairs: Moufang with Moufang, and named with named.

    Enumerated loops only take part when they are Moufang.
    """
    pool = [e for e in entries if e.provenance is not Provenance.ENUMERATED or is_moufang(e.loop).holds]
    moufang = {e.name: is_moufang(e.loop).holds for e in pool}
    jobs = []
    for s in pool:
        for t in pool:
            if s.order != t.order:
                continue
            if (moufang[s.name] and moufang[t.name]) or (s.named and t.named):
                jobs.append(PairJob(len(jobs), s, t, max_findings, order_filter))
    return jobs


# ── Summary ───────────────────────────────────────────────────────


@dataclass
class SweepSummary:
    pairs: int
    hypothesis_pairs: int
    group_pairs: int
    group_proper: int
    proper_total: int
    proper_under_hypothesis: int
    moufang_proper_orders: list[int]
    lemma_checks: int
    lemma_expected: int


@dataclass
class SweepReport:
    outcomes: list[PairOutcome]
    summary: SweepSummary


def summarise(outcomes: list[PairOutcome]) -> SweepSummary:
    hyp = [o for o in outcomes if all(o.moufang) and o.hypothesis]
    groups = [o for o in outcomes if all(o.groups)]
    moufang_orders = sorted({o.order for o in outcomes if all(o.moufang) and o.counts["proper"]})
    return SweepSummary(
        pairs=len(outcomes),
        hypothesis_pairs=len(hyp),
        group_pairs=len(groups),
        group_proper=sum(o.counts["proper"] for o in groups),
        proper_total=sum(o.counts["proper"] for o in outcomes),
        proper_under_hypothesis=sum(o.counts["proper"] for o in hyp),
        moufang_proper_orders=moufang_orders,
        lemma_checks=sum(o.lemma_checks for o in outcomes),
        lemma_expected=sum(sum(o.counts.values()) for o in outcomes if all(o.diassociative)),
    )


def _chunks(jobs: list[PairJob], size: int) -> list[list[PairJob]]:
    return [jobs[i:i + size] for i in range(0, len(jobs), size)]


async def verify_main_sweep(
    entries: Iterable[CatalogEntry],
    bus: EventBus | None = None,
    workers: int = 1,
    max_findings: int = 25,
    order_filter: bool = True,
) -> SweepReport:
    """Run every pair job; raise TheoremViolation after reporting the first trap."""
    bus = bus or EventBus()
    jobs = build_jobs(entries, max_findings, order_filter)
    await bus.signal("sweep_started", {"pairs": len(jobs), "workers": workers}, emitter="sweep")
    logger.info("Sweeping %d ordered pairs with %d worker(s)", len(jobs), workers)

    outcomes: list[PairOutcome] = []

    async def record(batch: list[PairOutcome]) -> None:
        for o in batch:
            outcomes.append(o)
            await bus.signal(
                "pair_searched",
                {"index": o.index, "source": o.source, "target": o.target, "counts": dict(o.counts)},
                emitter="sweep",
            )
            if o.counts["proper"]:
                await bus.signal(
                    "proper_found",
                    {"source": o.source, "target": o.target, "proper": o.counts["proper"]},
                    emitter="sweep",
                )

    if workers > 1 and len(jobs) > 1:
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [loop.run_in_executor(pool, run_chunk, chunk) for chunk in _chunks(jobs, 32)]
            for fut in asyncio.as_completed(futures):
                await record(await fut)
    else:
        for job in jobs:
            await record([await asyncio.to_thread(run_pair, job)])

    outcomes.sort(key=lambda o: o.index)
    violations = [o for o in outcomes if o.violation]
    if violations:
        first = violations[0]
        await bus.signal(
            "theorem_violation",
            {"source": first.source, "target": first.target, "violation": first.violation},
            emitter="sweep",
        )
        logger.error("Trap fired on %s -> %s: %s", first.source, first.target, first.violation)
        raise TheoremViolation(first.violation, source=first.source, target=first.target)

    summary = summarise(outcomes)
    if summary.proper_under_hypothesis or summary.group_proper:
        raise TheoremViolation("proper half-isomorphism counted under the squaring hypothesis")
    verdicts = {k: sum(o.counts[k] for o in outcomes) for k in VERDICT_KEYS.values()}
    await bus.signal(
        "sweep_finished",
        {"pairs": summary.pairs, "proper_total": summary.proper_total, "verdicts": dict(verdicts)},
        emitter="sweep",
    )
    logger.info(
        "Sweep done: %d pairs, %d under the squaring hypothesis, %d proper maps",
        summary.pairs, summary.hypothesis_pairs, summary.proper_total,
    )
    return SweepReport(outcomes, summary)
