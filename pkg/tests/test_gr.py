from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from grsegments.algebra import linalg as la
from grsegments.algebra.gr import (
    GrMemo,
    brute_force_measure,
    gr_filtration,
    gr_measure,
    gr_submodules,
    measure_of,
    submodules,
)
from grsegments.algebra.rep import Rep
from grsegments.config import Budgets
from grsegments.errors import BudgetExceeded, InvalidInput
from grsegments.measure import GrMeasure

M = GrMeasure.of


def test_submodule_lattice_of_p0(kronecker):
    P0 = Rep.projective(kronecker, 2, 0)
    lattice = submodules(P0)
    assert len(lattice) == 6
    assert [e.length for e in lattice.entries] == [0, 1, 1, 1, 2, 3]
    assert len(lattice.indecomposables()) == 4


def test_kronecker_measures(kronecker, h_module):
    assert measure_of(Rep.simple(kronecker, 2, 1)) == M(1)
    assert measure_of(Rep.projective(kronecker, 2, 0)) == M(1, 3)
    assert measure_of(Rep.injective(kronecker, 2, 1)) == M(1, 2, 3)
    assert measure_of(h_module(1)) == M(1, 2)
    assert measure_of(h_module(2)) == M(1, 2, 4)
    assert measure_of(h_module(3)) == M(1, 2, 4, 6)


def test_decomposable_measure_is_max_of_summands(kronecker, h_module):
    S = h_module(1).direct_sum(Rep.projective(kronecker, 2, 0))
    assert measure_of(S) == M(1, 2)


def test_oracle_agrees(kronecker, a21, h_module):
    for R in (Rep.projective(kronecker, 2, 0), Rep.injective(kronecker, 2, 1), h_module(2), Rep.projective(a21, 2, 0)):
        assert brute_force_measure(R) == measure_of(R)


def test_oracle_budget(h_module):
    with pytest.raises(BudgetExceeded):
        brute_force_measure(h_module(3), Budgets(end=4))


def test_witness_chain_lengths(h_module):
    result = gr_measure(h_module(3))
    lengths = tuple(sum(U.dim for U in spaces) for spaces in result.witness_chain)
    assert lengths == result.measure.elements


def test_gr_submodules_and_filtration(h_module):
    subs = gr_submodules(h_module(2))
    assert [T.dims for T in subs] == [(1, 1)]
    assert [T.dims for T in gr_filtration(h_module(3))] == [(0, 1), (1, 1), (2, 2), (3, 3)]


def test_gr_submodules_need_indecomposable(kronecker, h_module):
    S = h_module(1).direct_sum(h_module(1))
    with pytest.raises(InvalidInput):
        gr_submodules(S)
    with pytest.raises(InvalidInput):
        measure_of(Rep.zero(kronecker, 2))


def test_memo_reuses_isomorphism_classes(h_module):
    memo = GrMemo()
    H = h_module(3)
    mu = measure_of(H, memo=memo)
    assert len(memo) > 0
    rng = np.random.default_rng(1)
    twisted = H.change_basis([la.random_invertible(3, 2, rng), la.random_invertible(3, 2, rng)])
    assert memo.lookup(twisted) == mu


def test_memo_under_concurrent_lookup_and_insert(h_module):
    memo = GrMemo()
    H = h_module(2)
    mu = measure_of(H)
    rng = np.random.default_rng(5)
    copies = [H.change_basis([la.random_invertible(2, 2, rng), la.random_invertible(2, 2, rng)]) for _ in range(16)]

    def touch(X):
        memo.insert(X, mu)
        return memo.lookup(X)

    with ThreadPoolExecutor(max_workers=8) as pool:
        hits = list(pool.map(touch, copies))
    assert hits == [mu] * len(copies)
    assert memo.lookup(H) == mu
