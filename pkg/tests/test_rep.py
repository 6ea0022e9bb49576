import numpy as np
import pytest
from pydantic import ValidationError

from grsegments.algebra import linalg as la
from grsegments.algebra.rep import (
    Quiver,
    Rep,
    are_isomorphic,
    closure,
    decompose,
    ext_cocycles,
    extension,
    full_spaces,
    hom_basis,
    is_closed,
    is_indecomposable,
    maximal_submodules,
    quotient,
    subrep,
)
from grsegments.analysis.properties import rep_invariants
from grsegments.errors import InvalidInput


def test_quiver_validation():
    with pytest.raises(ValidationError):
        Quiver(name="split", vertex_count=3, arrows=((0, 1),))
    with pytest.raises(ValidationError):
        Quiver(name="bad", vertex_count=2, arrows=((0, 2),))


def test_quiver_helpers(kronecker, a21):
    assert kronecker.sinks() == [1]
    assert kronecker.sources() == [0]
    assert a21.is_acyclic()
    assert not a21.is_sink(1) and not a21.is_source(1)
    assert kronecker.arrow_count_matrix().tolist() == [[0, 2], [0, 0]]


def test_projectives_and_injectives(kronecker, a21):
    assert Rep.projective(kronecker, 2, 0).dims == (1, 2)
    assert Rep.projective(kronecker, 2, 1).dims == (0, 1)
    assert Rep.injective(kronecker, 2, 0).dims == (1, 0)
    assert Rep.injective(kronecker, 2, 1).dims == (2, 1)
    assert Rep.projective(a21, 2, 0).dims == (1, 1, 2)
    assert Rep.injective(a21, 2, 2).dims == (2, 1, 1)


def test_shape_checks(kronecker):
    with pytest.raises(InvalidInput):
        Rep(quiver=kronecker, p=2, dims=(1, 1), maps=(np.ones((2, 1)), np.ones((1, 1))))
    with pytest.raises(InvalidInput):
        Rep.from_dict(kronecker, 2, {"maps": []})


def test_dict_form(kronecker, h_module):
    H = h_module(2)
    back = Rep.from_dict(kronecker, 2, H.to_dict())
    assert back.key == H.key


def test_hom_dimensions(kronecker):
    P0, P1 = Rep.projective(kronecker, 2, 0), Rep.projective(kronecker, 2, 1)
    assert hom_basis(P1, P0).dim == 2
    assert hom_basis(P0, P1).dim == 0
    assert hom_basis(P0, P0).dim == 1


def test_indecomposability(kronecker, h_module):
    P0 = Rep.projective(kronecker, 2, 0)
    assert is_indecomposable(P0)
    assert is_indecomposable(h_module(3))
    S = P0.direct_sum(Rep.simple(kronecker, 2, 0))
    assert not is_indecomposable(S)
    parts = decompose(S)
    assert sorted(M.dims for M in parts) == [(1, 0), (1, 2)]
    with pytest.raises(InvalidInput):
        is_indecomposable(Rep.zero(kronecker, 2))


def test_isomorphism_under_base_change(kronecker, h_module):
    rng = np.random.default_rng(11)
    H = h_module(3, p=3)
    gs = [la.random_invertible(3, 3, rng), la.random_invertible(3, 3, rng)]
    assert are_isomorphic(H, H.change_basis(gs))
    other = Rep(quiver=kronecker, p=3, dims=(3, 3), maps=(np.eye(3, dtype=np.int64), 2 * np.eye(3, dtype=np.int64)))
    assert not are_isomorphic(H, other)


def test_sub_and_quotient(kronecker):
    P0 = Rep.projective(kronecker, 2, 0)
    assert subrep(P0, full_spaces(P0)).dims == P0.dims
    top_only = (la.full_subspace(1, 2), la.zero_subspace(2, 2))
    assert not is_closed(P0, top_only)
    with pytest.raises(InvalidInput):
        subrep(P0, top_only)
    U = closure(P0, top_only)
    assert tuple(x.dim for x in U) == (1, 2)
    socle = (la.zero_subspace(1, 2), la.full_subspace(2, 2))
    assert quotient(P0, socle).dims == (1, 0)


def test_maximal_submodules(kronecker):
    P0 = Rep.projective(kronecker, 2, 0)
    maxes = maximal_submodules(P0, full_spaces(P0))
    assert [tuple(U.dim for U in m) for m in maxes] == [(0, 2)]
    socle = maxes[0]
    assert len(maximal_submodules(P0, socle)) == 3


def test_extensions(kronecker):
    S0, S1 = Rep.simple(kronecker, 2, 0), Rep.simple(kronecker, 2, 1)
    cocycles = ext_cocycles(S0, S1)
    assert len(cocycles) == 2
    E = extension(S0, S1, cocycles[0])
    assert E.dims == (1, 1)
    assert is_indecomposable(E)
    assert ext_cocycles(S1, S0) == []


def test_rep_invariant_suite(a21):
    assert rep_invariants(a21, 2, np.random.default_rng(5), trials=10).ok
