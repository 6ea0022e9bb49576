import pytest

from grsegments.analysis.properties import catalog_invariants, oracle_equivalence, regular_gr_submodules
from grsegments.config import Budgets
from grsegments.errors import BudgetExceeded, InvalidInput
from grsegments.measure import GrMeasure
from grsegments.output import load_catalog, save_catalog
from grsegments.tame.catalog import build_catalog, truncate

M = GrMeasure.of


def test_kronecker_catalog_shape(kronecker_catalog):
    C = kronecker_catalog
    assert len(C) == 25
    assert len(C.by_position("preprojective")) == 5
    assert len(C.by_position("preinjective")) == 5
    assert len(C.by_position("regular")) == 15
    assert [e.entry_id for e in C.entries[:3]] == ["M000", "M001", "M002"]
    assert all(e.length <= 10 for e in C.entries)


def test_kronecker_labels_and_measures(kronecker_catalog):
    by_label = {e.label: e for e in kronecker_catalog.entries}
    assert by_label["P(1)"].dims == (0, 1)
    assert by_label["τ^-1 P(1)"].dims == (2, 3)
    assert by_label["P(0)"].measure == M(1, 3)
    assert by_label["τ^-2 P(1)"].measure == M(1, 3, 5, 7, 9)
    assert by_label["I(1)"].measure == M(1, 2, 3)
    assert {e.measure for e in kronecker_catalog.entries if e.tube and e.tube.quasi_length == 2} == {M(1, 2, 4)}


def test_tube_chains(kronecker_catalog):
    chain = kronecker_catalog.chain(0, 0)
    assert sorted(chain) == [1, 2, 3, 4, 5]
    assert [chain[i].measure for i in (1, 2)] == [M(1, 2), M(1, 2, 4)]
    assert len(kronecker_catalog.tube_entries()) == 3


def test_truncate(kronecker_catalog):
    small = truncate(kronecker_catalog, 8)
    assert small.L == 8
    assert all(e.length <= 8 for e in small.entries)
    assert {e.entry_id for e in small.entries} <= {e.entry_id for e in kronecker_catalog.entries}
    with pytest.raises(InvalidInput):
        truncate(kronecker_catalog, 12)


def test_catalog_round_trip(kronecker_catalog, tmp_path):
    save_catalog(kronecker_catalog, tmp_path)
    assert (tmp_path / "catalog.csv").read_text().splitlines()[0].startswith("entry_id,label,dims")
    loaded = load_catalog(tmp_path / "catalog.json")
    assert [e.measure for e in loaded.entries] == [e.measure for e in kronecker_catalog.entries]
    assert loaded.rep("M005").key == kronecker_catalog.rep("M005").key


def test_load_catalog_rejects_garbage(tmp_path):
    bad = tmp_path / "catalog.json"
    bad.write_text("{not json")
    with pytest.raises(InvalidInput):
        load_catalog(bad)


def test_budget_exhaustion(kronecker):
    with pytest.raises(BudgetExceeded) as info:
        build_catalog(kronecker, 2, 6, Budgets(end=2))
    partial = info.value.result
    assert partial.partial and partial.L == 6
    assert info.value.partial == len(partial)
    assert truncate(partial, 4).partial


def test_complete_catalog_is_not_partial(kronecker_catalog):
    assert not kronecker_catalog.partial


def test_kronecker_catalog_properties(kronecker_catalog):
    assert catalog_invariants(kronecker_catalog).ok
    oracle = oracle_equivalence(kronecker_catalog, max_length=6)
    assert oracle.ok and oracle.checked > 0
    assert regular_gr_submodules(kronecker_catalog).ok


@pytest.mark.slow
def test_a21_catalog(a21_catalog):
    C = a21_catalog
    assert catalog_invariants(C).ok
    m1 = [e for e in C.by_position("preinjective") if e.dims == (2, 2, 1)]
    assert len(m1) == 1
    tube = next(t for t, ms in C.tube_entries().items() if ms[0].tube.rank == 2)
    x3 = [e for e in C.tube_entries()[tube] if e.tube.quasi_length == 3 and e.dims == (2, 1, 2)]
    assert x3 and x3[0].measure == m1[0].measure
    x4 = C.chain(tube, x3[0].tube.quasi_socle)[4]
    assert m1[0].measure < x4.measure
    assert regular_gr_submodules(C).ok


@pytest.mark.slow
def test_d4_tilde_catalog(d4):
    C = build_catalog(d4, 2, 6)
    assert catalog_invariants(C).ok
    assert all(e.defect == 0 for e in C.by_position("regular"))
