import numpy as np
import pytest

from grsegments.algebra import linalg as la
from grsegments.analysis.properties import linalg_invariants
from grsegments.errors import BudgetExceeded, InvalidInput


def test_rref_and_rank():
    R, r = la.rref(np.array([[2, 4], [1, 2]]), 5)
    assert r == 1
    assert R[0].tolist() == [1, 2]
    assert la.rank(np.array([[1, 1], [1, 1]]), 2) == 1
    assert la.rank(la.zeros(0, 3), 3) == 0


def test_nullspace():
    N = la.nullspace_basis(np.array([[1, 1]]), 2)
    assert N.tolist() == [[1, 1]]
    assert la.nullspace_basis(la.identity(3), 7).shape == (0, 3)


def test_solve():
    x = la.solve(np.array([[1, 1], [0, 1]]), [1, 0], 2)
    assert x.tolist() == [1, 0]
    assert la.solve(np.array([[1, 1], [1, 1]]), [0, 1], 2) is None
    with pytest.raises(InvalidInput):
        la.solve(np.array([[1, 1]]), [0, 1], 2)


def test_inverse():
    A = np.array([[1, 2], [3, 4]])
    assert la.is_invertible(A, 5)
    assert la.mul(A, la.inverse(A, 5), 5).tolist() == [[1, 0], [0, 1]]
    assert not la.is_invertible(np.array([[1, 1], [1, 1]]), 3)


def test_subspace_counts_match_gaussian_binomials():
    assert len(la.enumerate_subspaces(2, 2)) == 5 == la.gaussian_binomial_total(2, 2)
    assert len(la.enumerate_subspaces(3, 2)) == 16 == la.gaussian_binomial_total(3, 2)
    assert len(la.enumerate_subspaces(2, 3)) == 6 == la.gaussian_binomial_total(2, 3)
    assert len(set(la.enumerate_subspaces(3, 3))) == la.gaussian_binomial_total(3, 3)


def test_subspace_budget():
    with pytest.raises(BudgetExceeded) as info:
        la.enumerate_subspaces(20, 2, budget=2**16)
    assert info.value.needed == 2**20


def test_sum_intersection_containment():
    x = la.span([[1, 0]], 2, 2)
    y = la.span([[0, 1]], 2, 2)
    assert la.subspace_intersect(x, y).dim == 0
    assert la.subspace_sum(x, y) == la.full_subspace(2, 2)
    assert la.subspace_contains(la.full_subspace(2, 2), x)
    assert not la.subspace_contains(x, la.full_subspace(2, 2))
    assert la.subspace_contains(x, la.zero_subspace(2, 2))


def test_canonical_form_is_basis_independent():
    assert la.span([[1, 1], [0, 1]], 2, 2) == la.full_subspace(2, 2)
    assert la.span([[2, 2, 0]], 3, 3) == la.span([[1, 1, 0]], 3, 3)


def test_reduce_modulo_gives_quotient_coordinates():
    U = la.span([[1, 1, 0]], 3, 2)
    residues = la.reduce_modulo(U, np.array([[1, 1, 0], [0, 1, 1]]))
    assert residues.shape == (2, 2)
    assert residues[0].tolist() == [0, 0]
    assert la.vectors_in(U, np.array([[1, 1, 0]]))
    assert not la.vectors_in(U, np.array([[0, 1, 1]]))


def test_linalg_invariant_suite():
    assert linalg_invariants(np.random.default_rng(3), trials=60).ok
