"""Canonical data records for catalogs, measures, successors, segments and reports."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

from grsegments.algebra.rep import Quiver, Rep
from grsegments.measure import GrMeasure


# ── Module record ────────────────────────────────────────

class ArrowMap(BaseModel):
    arrow: int
    entries: list[list[int]] = Field(default_factory=list)


class RepRecord(BaseModel):
    """JSON form of a representation: {dims, maps: [{arrow, entries}]}."""
    dims: list[int]
    maps: list[ArrowMap] = Field(default_factory=list)

    @classmethod
    def from_rep(cls, M: Rep) -> RepRecord:
        return cls.model_validate(M.to_dict())

    def to_rep(self, quiver: Quiver, p: int) -> Rep:
        return Rep.from_dict(quiver, p, self.model_dump())


# ── Catalog entry ────────────────────────────────────────

Position = Literal["preprojective", "regular", "preinjective"]


class TubeInfo(BaseModel):
    tube_id: int
    quasi_socle: int                 # index k of the quasi-socle τᵏX in the tube's orbit
    quasi_length: int
    rank: int

    @property
    def homogeneous(self) -> bool:
        return self.rank == 1


class CatalogEntry(BaseModel):
    entry_id: str                    # "M007", assigned after canonical sorting
    label: str                       # "τ^-2 P(0)", "T1[0]_3", ...
    dims: tuple[int, ...]
    position: Position
    defect: int
    tube: TubeInfo | None = None
    measure: GrMeasure
    module: RepRecord

    @property
    def length(self) -> int:
        return sum(self.dims)


# ── Measures and successors ──────────────────────────────

PartitionLabel = Literal["take_off", "central", "landing", "unstable"]

Certificate = Literal["catalog_relative", "theory_homogeneous", "theory_stable"]


class MeasureRecord(BaseModel):
    measure: GrMeasure
    modules: list[str]               # entry ids of the A(I) fiber
    partition: PartitionLabel | None = None
    positions_present: list[Position] = Field(default_factory=list)

    @property
    def fiber_size(self) -> int:
        return len(self.modules)


class SuccessorEdge(BaseModel):
    source: GrMeasure
    target: GrMeasure
    certificate: Certificate = "catalog_relative"


# ── Segments ─────────────────────────────────────────────

IndexType = Literal["N", "NegN", "Z", "Unknown"]


class Segment(BaseModel):
    segment_id: str
    measures: list[GrMeasure]        # ascending
    index_type: IndexType
    anchor: str                      # "take_off", "landing", "homogeneous", "tube 0", "central run"
    central: bool = False
    preinjective_run: int = 0        # preinjective-bearing fibers met walking down a tube segment
    edges: list[SuccessorEdge] = Field(default_factory=list)


# ── Reports ──────────────────────────────────────────────

class BoundCheck(BaseModel):
    name: str                        # "z_segments<=a", ...
    value: int
    bound: int | None                # None when the bound is unavailable
    ok: bool | None = None


class TheoremReport(BaseModel):
    quiver: str
    quiver_type: str
    p: int
    L: int
    delta: int
    a: int | None
    b: int
    expected_b: int
    z_segments: int
    central_typed_segments: int
    typed_segments: int
    unknown_segments: int
    unstable_measures: int
    checks: list[BoundCheck] = Field(default_factory=list)
    caveat: bool = False             # Unknown segments or Unstable measures were present

    @property
    def ok(self) -> bool:
        return all(c.ok is not False for c in self.checks)


class SinkSourceReport(BaseModel):
    quiver: str
    sink_source: bool
    preinjective_central: bool
    z_segment: bool

    @property
    def consistent(self) -> bool:
        """The orientation test, central preinjectives and Z segments agree."""
        return (not self.sink_source) == self.preinjective_central == self.z_segment


class SuiteResult(BaseModel):
    name: str
    checked: int = 0
    failures: list[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


class VerifyReport(BaseModel):
    quiver: str
    p: int
    L: int
    seed: int
    suites: list[SuiteResult] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.suites)
