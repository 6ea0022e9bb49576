import pytest

from grsegments.analysis.properties import (
    preinjectives_above_regular_submodules,
    run_all,
    stable_gr_submodule_unique,
    stable_tails_fix_rank,
)
from grsegments.analysis.segments import (
    _tube_segment,
    analyze,
    assemble_segments,
    check_sink_source_prop,
    compute_a,
    compute_b,
    h1_measure,
    homogeneous_measures,
    measure_universe,
    successor_in,
    verify_main_theorem,
)
from grsegments.errors import InvalidInput
from grsegments.measure import GrMeasure
from grsegments.tame.catalog import build_catalog

M = GrMeasure.of


def labels(analysis) -> dict[GrMeasure, str]:
    return {r.measure: r.partition for r in analysis.records}


# ── Kronecker ────────────────────────────────────────────

def test_measure_universe(kronecker_catalog):
    records = measure_universe(kronecker_catalog)
    assert len(records) == 14
    assert [r.measure for r in records] == sorted(r.measure for r in records)
    simple = next(r for r in records if r.measure == M(1))
    assert simple.positions_present == ["preprojective", "preinjective"]
    assert next(r for r in records if r.measure == M(1, 2, 4)).fiber_size == 3
    assert records[-1].measure == M(1, 2, 3)


def test_homogeneous_chain(kronecker_catalog):
    assert h1_measure(kronecker_catalog) == M(1, 2)
    assert homogeneous_measures(kronecker_catalog)[:3] == [M(1, 2), M(1, 2, 4), M(1, 2, 4, 6)]


def test_kronecker_partition(kronecker_analysis):
    got = labels(kronecker_analysis)
    for m in (M(1), M(1, 3), M(1, 3, 5), M(1, 3, 5, 7, 9)):
        assert got[m] == "take_off"
    for m in (M(1, 2), M(1, 2, 4), M(1, 2, 4, 6)):
        assert got[m] == "central"
    for m in (M(1, 2, 3), M(1, 2, 4, 5), M(1, 2, 4, 6, 7)):
        assert got[m] == "landing"
    assert got[M(1, 2, 4, 6, 8, 10)] == "unstable"


def test_successor(kronecker_catalog):
    edge = successor_in(kronecker_catalog, M(1, 2))
    assert edge.target == M(1, 2, 4)
    assert edge.certificate == "theory_homogeneous"
    assert successor_in(kronecker_catalog, M(1, 3)).target == M(1, 3, 5)
    assert successor_in(kronecker_catalog, M(1, 2, 3)) is None
    with pytest.raises(InvalidInput):
        successor_in(kronecker_catalog, M(1, 4))


def test_kronecker_segments(kronecker_analysis):
    segs = kronecker_analysis.segments
    by_anchor = {s.anchor: s for s in segs}
    assert by_anchor["take_off"].index_type == "N"
    assert by_anchor["landing"].index_type == "NegN"
    hom = by_anchor["homogeneous"]
    assert hom.index_type == "N" and hom.central
    assert hom.measures[:2] == [M(1, 2), M(1, 2, 4)]
    assert not any(s.index_type == "Z" for s in segs)
    assert [s.segment_id for s in segs] == [f"S{i}" for i in range(len(segs))]


def test_segments_need_partition(kronecker_catalog):
    with pytest.raises(InvalidInput):
        assemble_segments(kronecker_catalog, measure_universe(kronecker_catalog))


def test_kronecker_theorem_report(kronecker_catalog, kronecker_analysis):
    assert compute_a(kronecker_catalog) == 0
    assert compute_b(kronecker_catalog) == 0
    report = verify_main_theorem(kronecker_catalog, kronecker_analysis)
    values = {c.name: (c.value, c.bound) for c in report.checks}
    assert values == {
        "z_segments<=a": (0, 0),
        "central_segments<=b+1": (1, 1),
        "segments<=b+3": (3, 3),
    }
    assert report.ok
    assert report.caveat
    assert report.quiver_type == "Ã_{1,1}"


def test_sink_source_on_kronecker(kronecker, kronecker_catalog, kronecker_analysis):
    report = check_sink_source_prop(kronecker, kronecker_catalog, kronecker_analysis)
    assert report.sink_source
    assert not report.preinjective_central and not report.z_segment
    assert report.consistent


def test_sink_source_needs_type_a(d4, kronecker_catalog, kronecker_analysis):
    with pytest.raises(InvalidInput):
        check_sink_source_prop(d4, kronecker_catalog, kronecker_analysis)


def test_tube_segment_reports_why_it_is_missing(kronecker_catalog, kronecker_analysis, capsys):
    records = kronecker_analysis.records
    central = {r.measure.elements: r.partition == "central" for r in records}
    chain = kronecker_catalog.chain(0, 0)
    claimed = {m for m, c in central.items() if c}
    assert _tube_segment(kronecker_catalog, records, (0, 0), chain, claimed, central, 3) is None
    assert "already claimed" in capsys.readouterr().err.replace("\n", " ")
    assert _tube_segment(kronecker_catalog, records, (0, 0), chain, set(), {}, 3) is None
    err = capsys.readouterr().err.replace("\n", " ")
    assert "no central quasi-length" in err and "already claimed" not in err


def test_empty_small_window_is_all_unstable(kronecker):
    C = build_catalog(kronecker, 2, 2)
    analysis = analyze(C, delta=2)
    assert {r.partition for r in analysis.records} == {"unstable"}
    assert analysis.segments == []


@pytest.mark.slow
def test_kronecker_property_suites(kronecker_catalog, kronecker_analysis):
    report = run_all(kronecker_catalog, kronecker_analysis, seed=7, order_samples=2000, oracle_max_length=5)
    assert report.ok, [f for s in report.suites for f in s.failures]


def test_regular_chain_suites_on_kronecker(kronecker_catalog, kronecker_analysis):
    tails = stable_tails_fix_rank(kronecker_catalog)
    assert tails.ok and tails.checked > 0
    unique = stable_gr_submodule_unique(kronecker_catalog)
    assert unique.ok and unique.checked > 0
    above = preinjectives_above_regular_submodules(kronecker_catalog, kronecker_analysis.records)
    assert above.ok and above.checked > 0


# ── Ã_{2,1} and Ã_{2,2} ──────────────────────────────────

@pytest.mark.slow
def test_a21_counts_and_z_segment(a21_catalog, a21_analysis):
    assert a21_analysis.b == 2
    assert a21_analysis.a == 1
    assert h1_measure(a21_catalog) == M(1, 2, 3)
    z = [s for s in a21_analysis.segments if s.index_type == "Z"]
    assert len(z) == 1
    assert z[0].central and z[0].preinjective_run >= 3
    m1 = next(e for e in a21_catalog.by_position("preinjective") if e.dims == (2, 2, 1))
    assert m1.measure in z[0].measures
    assert any(s.anchor == "homogeneous" and s.index_type == "N" for s in a21_analysis.segments)
    report = verify_main_theorem(a21_catalog, a21_analysis)
    assert report.ok


@pytest.mark.slow
def test_a21_is_not_sink_source(a21, a21_catalog, a21_analysis):
    report = check_sink_source_prop(a21, a21_catalog, a21_analysis)
    assert not report.sink_source
    assert report.z_segment
    assert report.consistent


@pytest.mark.slow
def test_a22_sink_source_has_no_z_segment(a22):
    C = build_catalog(a22, 2, 8)
    analysis = analyze(C)
    assert analysis.b == 4
    assert not any(s.index_type == "Z" for s in analysis.segments)
    assert verify_main_theorem(C, analysis).ok
    report = check_sink_source_prop(a22, C, analysis)
    assert report.sink_source and report.consistent


@pytest.mark.slow
def test_a21_regular_chain_suites(a21_catalog, a21_analysis):
    for result in (
        stable_tails_fix_rank(a21_catalog),
        stable_gr_submodule_unique(a21_catalog),
        preinjectives_above_regular_submodules(a21_catalog, a21_analysis.records),
    ):
        assert result.ok, result.failures


# ── D̃₄ ──────────────────────────────────────────────────

@pytest.mark.slow
def test_d4_tilde_b_from_detected_tubes(d4):
    C = build_catalog(d4, 2, 8)
    assert compute_b(C) == 6
    analysis = analyze(C)
    assert analysis.b == 6
    assert verify_main_theorem(C, analysis).ok
