"""
Reports — Library Results as Response Models

One builder per result type, shared by the CLI and the HTTP layer so both
print the same JSON. dumps() fixes key order and indentation.
"""

from __future__ import annotations

import json
from typing import Iterable

from pydantic import BaseModel

from core.acceptance import AcceptanceReport
from core.catalog import CatalogEntry
from core.halfmorph import ElementMap, KernelExperiment, LemmaReport, MapClassification
from core.identities import IdentityReport, identity_reports
from core.loop import LoopTable
from core.scott import ScottAnalysis, ScottTriple
from core.structure import nucleus, is_normal, squaring_report
from core.sweep import Finding, PairOutcome, SweepReport
from models.schemas import (
    AcceptanceReportResponse,
    CatalogEntryResponse,
    CertificateResponse,
    CheckResponse,
    ClassificationResponse,
    FindingResponse,
    IdentityReportResponse,
    KernelExperimentResponse,
    LemmaPartResponse,
    LemmaReportResponse,
    LoopFile,
    NucleusResponse,
    ScottResponse,
    ScottTripleResponse,
    SearchResponse,
    SectionResponse,
    SquaringResponse,
    SweepReportResponse,
    SweepRowResponse,
    SweepSummaryResponse,
)


def dumps(model: BaseModel) -> str:
    return json.dumps(model.model_dump(mode="json"), sort_keys=True, indent=2)


def _pairs(pairs) -> list[list[int]] | None:
    return None if pairs is None else [list(p) for p in pairs]


# ── Loops ─────────────────────────────────────────────────────────


def identity_response(r: IdentityReport) -> IdentityReportResponse:
    return IdentityReportResponse(
        property=r.property,
        holds=r.holds,
        witness=None if r.witness is None else list(r.witness),
        lhs=r.lhs,
        rhs=r.rhs,
        detail=r.detail,
    )


def check_response(Q: LoopTable) -> CheckResponse:
    reports = identity_reports(Q)
    return CheckResponse(
        name=Q.name,
        order=Q.order,
        reports={k: identity_response(r) for k, r in reports.items()},
    )


def nucleus_response(Q: LoopTable) -> NucleusResponse:
    N = nucleus(Q)
    normal = is_normal(Q, N)
    response = NucleusResponse(name=Q.name, order=Q.order, nucleus=list(N.elements), normal=normal)
    if normal:
        q, squaring = squaring_report(Q, N)
        response.cosets = [list(c) for c in q.cosets]
        response.quotient = LoopFile(order=q.order, name=q.table.name, table=q.table.rows)
        response.squaring = SquaringResponse(
            surjective=squaring.surjective,
            injective=squaring.injective,
            image=list(squaring.image),
            quotient_order=squaring.quotient_order,
        )
    return response


def catalog_entry_response(entry: CatalogEntry) -> CatalogEntryResponse:
    return CatalogEntryResponse(name=entry.name, order=entry.order, provenance=entry.provenance.value)


# ── Maps ──────────────────────────────────────────────────────────


def classification_response(phi: ElementMap, c: MapClassification) -> ClassificationResponse:
    return ClassificationResponse(
        source=phi.source.name,
        target=phi.target.name,
        images=list(phi.images),
        verdict=c.verdict.value,
        bijective=c.bijective,
        direct_pairs=c.direct_pairs,
        reversed_pairs=c.reversed_pairs,
        all_direct=c.all_direct,
        all_reversed=c.all_reversed,
        proper_witnesses=_pairs(c.proper_witnesses),
        violation=None if c.violation is None else list(c.violation),
    )


def lemma_response(report: LemmaReport) -> LemmaReportResponse:
    return LemmaReportResponse(
        passed=report.passed,
        parts={
            name: LemmaPartResponse(
                passed=p.passed, witness=None if p.witness is None else list(p.witness), detail=p.detail
            )
            for name, p in report.parts.items()
        },
    )


def triple_response(images: Iterable[int], t: ScottTriple) -> ScottTripleResponse:
    return ScottTripleResponse(
        a=t.a,
        b=t.b,
        c=t.c,
        inverted=t.inverted,
        images=list(images),
        certificates=[
            CertificateResponse(
                condition=cert.condition,
                pair=list(cert.pair),
                isomorphism=cert.isomorphism,
                anti_isomorphism=cert.anti_isomorphism,
                noncommuting=cert.noncommuting,
            )
            for cert in t.certificates
        ],
    )


def scott_response(analysis: ScottAnalysis) -> ScottResponse:
    return ScottResponse(
        triple=triple_response(analysis.phi.images, analysis.triple),
        verified=analysis.check.passed,
        abelian_squares=analysis.squares.passed,
        a_set=list(analysis.decomposition.A),
        b_set=list(analysis.decomposition.B),
        hypothesis_holds=analysis.contradiction.hypothesis_holds,
        contradiction_reachable=analysis.contradiction.reachable,
    )


def search_response(
    source: LoopTable,
    target: LoopTable,
    results: Iterable[tuple[ElementMap, MapClassification]],
    mode: str,
    limit: int | None = None,
) -> SearchResponse:
    maps = []
    truncated = False
    for phi, c in results:
        if limit is not None and len(maps) >= limit:
            truncated = True
            break
        maps.append(classification_response(phi, c))
    return SearchResponse(
        source=source.name, target=target.name, mode=mode, count=len(maps), truncated=truncated, maps=maps
    )


def kernel_response(source: LoopTable, target: LoopTable, exp: KernelExperiment) -> KernelExperimentResponse:
    first = None
    if exp.first_non_normal is not None:
        images, elements = exp.first_non_normal
        first = {"images": list(images), "kernel": list(elements)}
    return KernelExperimentResponse(
        source=source.name,
        target=target.name,
        half_homomorphisms=exp.half_homomorphisms,
        normal_kernels=exp.normal_kernels,
        non_normal_kernels=exp.non_normal_kernels,
        first_non_normal=first,
    )


# ── Sweeps ────────────────────────────────────────────────────────


def finding_response(f: Finding) -> FindingResponse:
    triple = None
    if f.triple is not None:
        images = f.inverted_images if f.inverted_images is not None else f.images
        triple = triple_response(images, f.triple)
    return FindingResponse(
        images=list(f.images),
        verdict=f.verdict,
        a_set=list(f.a_set),
        b_set=list(f.b_set),
        covers=f.covers,
        triple=triple,
        abelian_squares=f.abelian_squares,
        hypothesis_holds=f.hypothesis_holds,
        note=f.note,
    )


def row_response(o: PairOutcome) -> SweepRowResponse:
    return SweepRowResponse(
        source=o.source,
        target=o.target,
        order=o.order,
        moufang=list(o.moufang),
        hypothesis=o.hypothesis,
        counts=dict(o.counts),
        maps_checked=o.maps_checked,
        lemma_checks=o.lemma_checks,
        findings=[finding_response(f) for f in o.findings],
        findings_truncated=o.findings_truncated,
    )


def sweep_response(report: SweepReport) -> SweepReportResponse:
    s = report.summary
    return SweepReportResponse(
        summary=SweepSummaryResponse(
            pairs=s.pairs,
            hypothesis_pairs=s.hypothesis_pairs,
            group_pairs=s.group_pairs,
            group_proper=s.group_proper,
            proper_total=s.proper_total,
            proper_under_hypothesis=s.proper_under_hypothesis,
            moufang_proper_orders=list(s.moufang_proper_orders),
            lemma_checks=s.lemma_checks,
            lemma_expected=s.lemma_expected,
        ),
        rows=[row_response(o) for o in report.outcomes],
    )


def acceptance_response(report: AcceptanceReport) -> AcceptanceReportResponse:
    return AcceptanceReportResponse(
        passed=report.passed,
        sections=[SectionResponse(name=s.name, passed=s.passed, details=s.details) for s in report.sections],
    )
