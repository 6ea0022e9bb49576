import numpy as np
import pytest

from grsegments.algebra import linalg as la
from grsegments.algebra.gr import measure_of
from grsegments.algebra.rep import Quiver, Rep, are_isomorphic
from grsegments.errors import InvalidInput, NotTame
from grsegments.measure import GrMeasure
from grsegments.tame.dedup import dedup_reps, find_isoclass_clusters, fingerprint
from grsegments.tame.euler import defect, euler_data, is_sink_source, vertex_order
from grsegments.tame.functors import ar_translate, reflect, tau_power
from grsegments.tame.tubes import build_x_chain, detect_tubes, is_quasi_simple, rank, tau_orbit

M = GrMeasure.of


def a21_x(a21) -> Rep:
    """The quasi-simple (1,0,1) on the long arrow 0 → 2."""
    return Rep(quiver=a21, p=2, dims=(1, 0, 1), maps=(np.zeros((0, 1)), np.zeros((1, 0)), np.array([[1]])))


# ── Euler data ───────────────────────────────────────────

def test_types_and_b_table(kronecker, a21, a22, d4):
    expected = {kronecker: ("Ã_{1,1}", 0), a21: ("Ã_{2,1}", 2), a22: ("Ã_{2,2}", 4), d4: ("D̃_4", 6)}
    for Q, (label, b) in expected.items():
        ed = euler_data(Q)
        assert str(ed.quiver_type) == label
        assert ed.quiver_type.expected_b == b


def test_null_roots(kronecker, a21, d4):
    assert euler_data(kronecker).delta.tolist() == [1, 1]
    assert euler_data(a21).delta.tolist() == [1, 1, 1]
    assert euler_data(d4).delta.tolist() == [1, 1, 1, 1, 2]


def test_non_tame_quivers():
    with pytest.raises(NotTame):
        euler_data(Quiver(name="a2", vertex_count=2, arrows=((0, 1),)))
    with pytest.raises(NotTame):
        euler_data(Quiver(name="k3", vertex_count=2, arrows=((0, 1),) * 3))
    with pytest.raises(NotTame):
        euler_data(Quiver(name="loop", vertex_count=2, arrows=((0, 1), (1, 0))))


def test_coxeter_on_kronecker(kronecker):
    ed = euler_data(kronecker)
    assert ed.tau_inverse((0, 1)).tolist() == [2, 3]
    assert ed.tau((2, 3)).tolist() == [0, 1]
    for v in range(2):
        assert ed.tau(ed.projective_dims(v)).tolist() == [-x for x in ed.injective_dims(v)]


def test_defect_signs(kronecker, a21, h_module):
    ed = euler_data(kronecker)
    assert defect(ed, Rep.projective(kronecker, 2, 0).dims) < 0
    assert defect(ed, h_module(2).dims) == 0
    assert defect(ed, Rep.injective(kronecker, 2, 1).dims) > 0
    ed21 = euler_data(a21)
    assert defect(ed21, (1, 0, 1)) == 0
    assert defect(ed21, (1, 1, 2)) < 0


def test_orientation_helpers(kronecker, a21, a22):
    assert is_sink_source(kronecker)
    assert is_sink_source(a22)
    assert not is_sink_source(a21)
    assert vertex_order(kronecker) == [1, 0]


# ── Functors ─────────────────────────────────────────────

def test_reflections(kronecker, a21):
    S1 = Rep.simple(kronecker, 2, 1)
    assert reflect(S1, 1).length == 0
    with pytest.raises(InvalidInput):
        reflect(Rep.simple(a21, 2, 1), 1)


def test_ar_translate_on_kronecker(kronecker):
    P1 = Rep.projective(kronecker, 2, 1)
    assert ar_translate(P1, "tau_inverse").dims == (2, 3)
    assert ar_translate(P1, "tau") is None
    assert ar_translate(Rep.injective(kronecker, 2, 0), "tau_inverse") is None
    assert tau_power(P1, -2).dims == (4, 5)
    back = ar_translate(ar_translate(P1, "tau_inverse"), "tau")
    assert are_isomorphic(back, P1)


def test_ar_translate_needs_indecomposable(kronecker, h_module):
    with pytest.raises(InvalidInput):
        ar_translate(h_module(1).direct_sum(h_module(1)))


# ── Tubes ────────────────────────────────────────────────

def test_a21_exceptional_tube(a21):
    ed = euler_data(a21)
    S1, X = Rep.simple(a21, 2, 1), a21_x(a21)
    assert is_quasi_simple(S1, ed)
    assert is_quasi_simple(X, ed)
    assert not is_quasi_simple(Rep.projective(a21, 2, 0), ed)
    assert rank(S1, ed) == 2
    orbit = tau_orbit(S1)
    assert len(orbit) == 2
    assert are_isomorphic(ar_translate(S1, "tau_inverse"), X)


def test_a21_chain_measures(a21):
    S1, X = Rep.simple(a21, 2, 1), a21_x(a21)
    assert build_x_chain(S1, 2).dims == (1, 1, 1)
    assert measure_of(build_x_chain(S1, 2)) == M(1, 3)
    assert measure_of(build_x_chain(X, 2)) == M(1, 2, 3)
    assert build_x_chain(X, 3).dims == (2, 1, 2)


def test_detect_tubes(kronecker, a21):
    tubes = detect_tubes(euler_data(kronecker), 2)
    assert len(tubes) == 3
    assert all(t.homogeneous for t in tubes)
    tubes = detect_tubes(euler_data(a21), 2)
    assert [t.rank for t in tubes if not t.homogeneous] == [2]
    assert tubes[0].dims_sum() == (1, 1, 1)
    assert len(detect_tubes(euler_data(kronecker), 3)) == 4


# ── Dedup ────────────────────────────────────────────────

def test_dedup(kronecker, h_module):
    rng = np.random.default_rng(2)
    H = h_module(2)
    twisted = H.change_basis([la.random_invertible(2, 2, rng), la.random_invertible(2, 2, rng)])
    P0 = Rep.projective(kronecker, 2, 0)
    assert fingerprint(H) == fingerprint(twisted)
    assert find_isoclass_clusters([H, P0, twisted]) == [[0, 2]]
    assert len(dedup_reps([H, P0, twisted])) == 2
