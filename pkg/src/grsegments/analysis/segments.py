"""Measure-level analysis over a catalog.

measure_universe:    distinct measures ascending, with their A(I) fibers
successor_in:        catalog-relative direct successor, upgraded by theory certificates
partition:           take-off / central / landing / unstable from two length windows
assemble_segments:   successor chains grouped and index-typed
compute_a/compute_b: exceptional quasi-simple counts
verify_main_theorem: segment counts against a, b+1 and b+3
"""

from __future__ import annotations

from dataclasses import dataclass

from rich.console import Console

from grsegments.algebra.rep import Quiver
from grsegments.errors import InvalidInput
from grsegments.measure import GrMeasure, max_of
from grsegments.models import (
    BoundCheck,
    CatalogEntry,
    Certificate,
    MeasureRecord,
    Segment,
    SinkSourceReport,
    SuccessorEdge,
    TheoremReport,
)
from grsegments.tame.catalog import Catalog, truncate
from grsegments.tame.euler import euler_data, is_sink_source

console = Console(stderr=True)

_POSITIONS = ("preprojective", "regular", "preinjective")


# ── Universe ─────────────────────────────────────────────

def measure_universe(C: Catalog) -> list[MeasureRecord]:
    fibers: dict[tuple[int, ...], list[CatalogEntry]] = {}
    for e in C.entries:
        fibers.setdefault(e.measure.elements, []).append(e)
    records = []
    for entries in fibers.values():
        present = {e.position for e in entries}
        records.append(MeasureRecord(
            measure=entries[0].measure,
            modules=[e.entry_id for e in entries],
            positions_present=[pos for pos in _POSITIONS if pos in present],
        ))
    records.sort(key=lambda r: r.measure)
    return records


def _index_of(records: list[MeasureRecord], I: GrMeasure) -> int:
    for i, r in enumerate(records):
        if r.measure == I:
            return i
    raise InvalidInput(f"{I} is not a measure of this catalog")


# ── Tube views ───────────────────────────────────────────

def homogeneous_measures(C: Catalog) -> list[GrMeasure]:
    """μ(H₁), μ(H₂), … along the first homogeneous tube of the catalog."""
    hom = sorted({e.tube.tube_id for e in C.entries if e.tube is not None and e.tube.rank == 1})
    if not hom:
        return []
    chain = C.chain(hom[0], 0)
    return [chain[i].measure for i in sorted(chain)]


def h1_measure(C: Catalog) -> GrMeasure | None:
    hm = homogeneous_measures(C)
    return hm[0] if hm else None


def quasi_simple_chains(C: Catalog) -> dict[tuple[int, int], dict[int, CatalogEntry]]:
    """(tube id, quasi-socle index) → {quasi_length: entry}."""
    keys = sorted({(e.tube.tube_id, e.tube.quasi_socle) for e in C.entries if e.tube is not None})
    return {k: C.chain(*k) for k in keys}


def _rank_of(chain: dict[int, CatalogEntry]) -> int:
    return next(iter(chain.values())).tube.rank


def stable_chains(C: Catalog, exceptional_only: bool = True) -> dict[tuple[int, int], dict[int, CatalogEntry]]:
    """Chains of quasi-simples X with μ(X_R) ≥ μ(H₁)."""
    h1 = h1_measure(C)
    if h1 is None:
        return {}
    out = {}
    for key, chain in quasi_simple_chains(C).items():
        R = _rank_of(chain)
        if exceptional_only and R < 2:
            continue
        top = chain.get(R)
        if top is not None and top.measure >= h1:
            out[key] = chain
    return out


def _certificate(C: Catalog, I: GrMeasure, J: GrMeasure) -> Certificate:
    for key, chain in quasi_simple_chains(C).items():
        if _rank_of(chain) != 1:
            continue
        for i in sorted(chain):
            nxt = chain.get(i + 1)
            if nxt is not None and chain[i].measure == I and nxt.measure == J:
                return "theory_homogeneous"
    for key, chain in stable_chains(C).items():
        R = _rank_of(chain)
        for j in sorted(chain):
            nxt = chain.get(j + 1)
            if j >= 2 * R and nxt is not None and chain[j].measure == I and nxt.measure == J:
                return "theory_stable"
    return "catalog_relative"


def successor_in(C: Catalog, I: GrMeasure, records: list[MeasureRecord] | None = None) -> SuccessorEdge | None:
    records = records if records is not None else measure_universe(C)
    i = _index_of(records, I)
    if i + 1 == len(records):
        return None
    J = records[i + 1].measure
    return SuccessorEdge(source=I, target=J, certificate=_certificate(C, I, J))


def successor_edges(C: Catalog, records: list[MeasureRecord]) -> list[SuccessorEdge]:
    return [
        SuccessorEdge(source=a.measure, target=b.measure, certificate=_certificate(C, a.measure, b.measure))
        for a, b in zip(records, records[1:])
    ]


# ── Partition ────────────────────────────────────────────

def partition(C: Catalog, delta: int = 2) -> list[MeasureRecord]:
    """Label the universe of C by comparing it with the window L − delta."""
    big = measure_universe(C)
    small = measure_universe(truncate(C, C.L - delta)) if C.L - delta >= 1 else []
    if not small:
        console.print(f"[yellow]Window L-Δ={C.L - delta} is empty; every label is unstable[/]")
        return [r.model_copy(update={"partition": "unstable"}) for r in big]

    k = 0
    while k < min(len(big), len(small)) and big[k].measure == small[k].measure:
        k += 1
    candidates = [r.measure for r in big[:k]]
    candidates += [r.measure for r in big if "preprojective" in r.positions_present]
    take_top = max_of(candidates) if candidates else None

    s = 0
    while (
        s < min(len(big), len(small))
        and big[-1 - s].measure == small[-1 - s].measure
        and big[-1 - s].fiber_size == small[-1 - s].fiber_size
    ):
        s += 1
    land_bottom = big[-s].measure if s else None

    in_small = {r.measure.elements for r in small}
    out = []
    for r in big:
        m = r.measure
        if take_top is not None and m <= take_top:
            label = "take_off"
        elif land_bottom is not None and m >= land_bottom:
            label = "landing"
        elif m.elements in in_small:
            label = "central"
        else:
            label = "unstable"
        out.append(r.model_copy(update={"partition": label}))

    h1 = h1_measure(C)
    if h1 is not None:
        label = next(r.partition for r in out if r.measure == h1)
        if label != "central":
            console.print(f"[yellow]μ(H₁)={h1} is labelled {label}, not central; L is probably too small[/]")
    return out


# ── Segments ─────────────────────────────────────────────

def _edges(C: Catalog, measures: list[GrMeasure]) -> list[SuccessorEdge]:
    return [
        SuccessorEdge(source=a, target=b, certificate=_certificate(C, a, b))
        for a, b in zip(measures, measures[1:])
    ]


def _has_homogeneous(C: Catalog, r: MeasureRecord) -> bool:
    return any((e := C.entry(i)).tube is not None and e.tube.rank == 1 for i in r.modules)


def _tube_segment(
    C: Catalog,
    records: list[MeasureRecord],
    tube_key: tuple[int, int],
    chain: dict[int, CatalogEntry],
    assigned: set[tuple[int, ...]],
    central: dict[tuple[int, ...], bool],
    z_min_run: int,
) -> Segment | None:
    h1 = h1_measure(C)
    R = _rank_of(chain)
    ups: list[GrMeasure] = []
    for j in sorted(chain):
        m = chain[j].measure
        if j >= 2 * R and central.get(m.elements) and m.elements not in assigned and m not in ups:
            ups.append(m)
    if not ups:
        claimed = [j for j in chain if j >= 2 * R and central.get(chain[j].measure.elements)]
        if claimed:
            console.print(f"[yellow]Tube {tube_key[0]}: quasi-lengths ≥ {2 * R} already claimed by another segment[/]")
        else:
            console.print(f"[yellow]Tube {tube_key[0]}: no central quasi-length ≥ {2 * R} within L={C.L}; no segment[/]")
        return None

    members = list(ups)
    idx = _index_of(records, ups[0])
    run = 0
    while idx > 0:
        prev = records[idx - 1]
        if prev.partition in ("take_off", "landing") or prev.measure.elements in assigned:
            break
        if _has_homogeneous(C, prev) or (h1 is not None and prev.measure <= h1):
            break
        same_chain = any(
            (e := C.entry(i)).tube is not None and (e.tube.tube_id, e.tube.quasi_socle) == tube_key
            for i in prev.modules
        )
        preinjective_only = prev.positions_present == ["preinjective"]
        if not (same_chain or preinjective_only):
            break
        if "preinjective" in prev.positions_present:
            run += 1
        members.insert(0, prev.measure)
        idx -= 1

    index_type = "Z" if run >= z_min_run else ("N" if run == 0 else "Unknown")
    return Segment(
        segment_id="",
        measures=members,
        index_type=index_type,
        anchor=f"tube {tube_key[0]}[{tube_key[1]}]",
        central=True,
        preinjective_run=run,
        edges=_edges(C, members),
    )


def assemble_segments(C: Catalog, records: list[MeasureRecord], z_min_run: int = 3) -> list[Segment]:
    if any(r.partition is None for r in records):
        raise InvalidInput("assemble_segments needs partitioned records")
    assigned: set[tuple[int, ...]] = set()
    central = {r.measure.elements: r.partition == "central" for r in records}
    segments: list[Segment] = []

    def claim(measures: list[GrMeasure]) -> None:
        assigned.update(m.elements for m in measures)

    take = [r.measure for r in records if r.partition == "take_off"]
    if take:
        segments.append(Segment(segment_id="", measures=take, index_type="N", anchor="take_off", edges=_edges(C, take)))
        claim(take)
    landing = [r.measure for r in records if r.partition == "landing"]
    if landing:
        segments.append(Segment(segment_id="", measures=landing, index_type="NegN", anchor="landing", edges=_edges(C, landing)))
        claim(landing)

    hom: list[GrMeasure] = []
    for m in homogeneous_measures(C):
        if central.get(m.elements) and m.elements not in assigned and m not in hom:
            hom.append(m)
    if hom:
        segments.append(Segment(
            segment_id="", measures=hom, index_type="N", anchor="homogeneous", central=True, edges=_edges(C, hom),
        ))
        claim(hom)

    for key, chain in stable_chains(C).items():
        seg = _tube_segment(C, records, key, chain, assigned, central, z_min_run)
        if seg is not None:
            segments.append(seg)
            claim(seg.measures)

    run: list[GrMeasure] = []
    for r in records + [None]:
        if r is not None and r.partition == "central" and r.measure.elements not in assigned:
            run.append(r.measure)
            continue
        if run:
            segments.append(Segment(
                segment_id="", measures=run, index_type="Unknown", anchor="central run", central=True,
                edges=_edges(C, run),
            ))
            run = []

    segments.sort(key=lambda s: s.measures[0])
    return [s.model_copy(update={"segment_id": f"S{i}"}) for i, s in enumerate(segments)]


# ── Counts and reports ───────────────────────────────────

def compute_b(C: Catalog) -> int:
    ranks = {e.tube.tube_id: e.tube.rank for e in C.entries if e.tube is not None and e.tube.rank >= 2}
    return sum(ranks.values())


def compute_a(C: Catalog) -> int | None:
    """None when no homogeneous H₁ lies in the catalog."""
    if h1_measure(C) is None:
        console.print("[yellow]No homogeneous module within L; a is unavailable[/]")
        return None
    return len(stable_chains(C))


@dataclass
class SegmentAnalysis:
    records: list[MeasureRecord]
    edges: list[SuccessorEdge]
    segments: list[Segment]
    a: int | None
    b: int
    delta: int


def analyze(C: Catalog, delta: int = 2, z_min_run: int = 3) -> SegmentAnalysis:
    records = partition(C, delta)
    return SegmentAnalysis(
        records=records,
        edges=successor_edges(C, records),
        segments=assemble_segments(C, records, z_min_run),
        a=compute_a(C),
        b=compute_b(C),
        delta=delta,
    )


def verify_main_theorem(C: Catalog, analysis: SegmentAnalysis) -> TheoremReport:
    segs = analysis.segments
    typed = [s for s in segs if s.index_type != "Unknown"]
    z = sum(1 for s in typed if s.index_type == "Z")
    central = sum(1 for s in typed if s.central)
    unknown = len(segs) - len(typed)
    unstable = sum(1 for r in analysis.records if r.partition == "unstable")
    a, b = analysis.a, analysis.b
    ed = euler_data(C.quiver)

    checks = [
        BoundCheck(name="z_segments<=a", value=z, bound=a, ok=None if a is None else z <= a),
        BoundCheck(name="central_segments<=b+1", value=central, bound=b + 1, ok=central <= b + 1),
        BoundCheck(name="segments<=b+3", value=len(typed), bound=b + 3, ok=len(typed) <= b + 3),
    ]
    return TheoremReport(
        quiver=C.quiver.name,
        quiver_type=str(ed.quiver_type),
        p=C.p,
        L=C.L,
        delta=analysis.delta,
        a=a,
        b=b,
        expected_b=ed.quiver_type.expected_b,
        z_segments=z,
        central_typed_segments=central,
        typed_segments=len(typed),
        unknown_segments=unknown,
        unstable_measures=unstable,
        checks=checks,
        caveat=bool(unknown or unstable),
    )


def check_sink_source_prop(Q: Quiver, C: Catalog, analysis: SegmentAnalysis) -> SinkSourceReport:
    ed = euler_data(Q)
    if ed.quiver_type.family != "A":
        raise InvalidInput(f"the sink-source criterion applies to type Ã only, not {ed.quiver_type}")
    return SinkSourceReport(
        quiver=Q.name,
        sink_source=is_sink_source(Q),
        preinjective_central=any(
            r.partition == "central" and "preinjective" in r.positions_present for r in analysis.records
        ),
        z_segment=any(s.index_type == "Z" for s in analysis.segments),
    )
