"""
Pydantic Schemas — File Formats and Reports

Every JSON shape that enters or leaves the library: loop and map files, the
coset sidecar, identity/classification/search/sweep reports and the HTTP
request bodies. Reports are serialized with sorted keys so repeated runs
produce identical bytes.
"""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field


# ── Files ─────────────────────────────────────────────────────────

class LoopFile(BaseModel):
    order: int = Field(..., ge=1, description="Carrier size n; elements are 0..n-1")
    name: str | None = Field(None, description="Optional catalog label")
    table: list[list[int]] = Field(..., description="Row x, column y holds the product x·y")


class MapFile(BaseModel):
    source: str = Field(..., description="Catalog name or path of the source loop")
    target: str = Field(..., description="Catalog name or path of the target loop")
    images: list[int] = Field(..., description="images[x] is φ(x)")


class CosetFile(BaseModel):
    cosets: list[list[int]]


# ── Requests ──────────────────────────────────────────────────────

class LoopRef(BaseModel):
    """A catalog name or an inline table."""

    name: str | None = None
    loop: LoopFile | None = None


class ClassifyRequest(BaseModel):
    source: LoopRef
    target: LoopRef
    images: list[int]


class SearchRequest(BaseModel):
    source: LoopRef
    target: LoopRef
    proper_only: bool = False
    first: bool = False
    homomorphisms: bool = Field(False, description="Search non-bijective half-homomorphisms")
    limit: int = Field(1000, ge=1, description="Maximum number of maps returned")


class SweepRequest(BaseModel):
    max_order: int = Field(4, ge=1, le=6, description="Largest enumerated order")
    named_max_order: int = Field(8, ge=1, description="Largest named catalog order")
    include_enumerated: bool = True


# ── Responses ─────────────────────────────────────────────────────

class IdentityReportResponse(BaseModel):
    property: str
    holds: bool
    witness: list[int] | None = None
    lhs: int | None = None
    rhs: int | None = None
    detail: str = ""

    model_config = ConfigDict(from_attributes=True)


class CheckResponse(BaseModel):
    name: str | None
    order: int
    reports: dict[str, IdentityReportResponse]


class SquaringResponse(BaseModel):
    surjective: bool
    injective: bool
    image: list[int]
    quotient_order: int

    model_config = ConfigDict(from_attributes=True)


class NucleusResponse(BaseModel):
    name: str | None
    order: int
    nucleus: list[int]
    normal: bool
    cosets: list[list[int]] | None = None
    quotient: LoopFile | None = None
    squaring: SquaringResponse | None = None


class ClassificationResponse(BaseModel):
    source: str | None
    target: str | None
    images: list[int]
    verdict: str
    bijective: bool
    direct_pairs: int
    reversed_pairs: int
    all_direct: bool
    all_reversed: bool
    proper_witnesses: list[list[int]] | None = None
    violation: list[int] | None = None


class LemmaPartResponse(BaseModel):
    passed: bool
    witness: list[int] | None = None
    detail: str = ""

    model_config = ConfigDict(from_attributes=True)


class LemmaReportResponse(BaseModel):
    passed: bool
    parts: dict[str, LemmaPartResponse]


class CertificateResponse(BaseModel):
    condition: str
    pair: list[int]
    isomorphism: bool
    anti_isomorphism: bool
    noncommuting: bool

    model_config = ConfigDict(from_attributes=True)


class ScottTripleResponse(BaseModel):
    a: int
    b: int
    c: int
    inverted: bool
    images: list[int]
    certificates: list[CertificateResponse]


class ScottResponse(BaseModel):
    triple: ScottTripleResponse
    verified: bool
    abelian_squares: bool
    a_set: list[int]
    b_set: list[int]
    hypothesis_holds: bool
    contradiction_reachable: bool


class SearchResponse(BaseModel):
    source: str | None
    target: str | None
    mode: str
    count: int
    truncated: bool = False
    maps: list[ClassificationResponse]


class KernelExperimentResponse(BaseModel):
    source: str | None
    target: str | None
    half_homomorphisms: int
    normal_kernels: int
    non_normal_kernels: int
    first_non_normal: dict[str, Any] | None = None


class FindingResponse(BaseModel):
    images: list[int]
    verdict: str
    a_set: list[int]
    b_set: list[int]
    covers: bool
    triple: ScottTripleResponse | None = None
    abelian_squares: bool | None = None
    hypothesis_holds: bool | None = None
    note: str = ""


class SweepRowResponse(BaseModel):
    source: str
    target: str
    order: int
    moufang: list[bool]
    hypothesis: bool | None
    counts: dict[str, int]
    maps_checked: int
    lemma_checks: int
    findings: list[FindingResponse] = []
    findings_truncated: int = 0


class SweepSummaryResponse(BaseModel):
    pairs: int
    hypothesis_pairs: int
    group_pairs: int
    group_proper: int
    proper_total: int
    proper_under_hypothesis: int
    moufang_proper_orders: list[int]
    lemma_checks: int
    lemma_expected: int


class SweepReportResponse(BaseModel):
    summary: SweepSummaryResponse
    rows: list[SweepRowResponse]


class CatalogEntryResponse(BaseModel):
    name: str
    order: int
    provenance: str

    model_config = ConfigDict(from_attributes=True)


class SectionResponse(BaseModel):
    name: str
    passed: bool
    details: dict[str, Any] = {}


class AcceptanceReportResponse(BaseModel):
    passed: bool
    sections: list[SectionResponse]
