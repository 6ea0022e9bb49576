"""Gabriel-Roiter measures of concrete representations.

submodules:      full lattice via cyclic closures and saturation under sums
gr_measure:      μ(M) with a witness chain, memoized per isomorphism class
gr_submodules:   isomorphism classes of GR submodules of an indecomposable
gr_filtration:   iterated GR inclusions ending at M
brute_force_measure: independent chain-enumeration oracle
"""

from __future__ import annotations

import itertools
import threading
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np
from rich.console import Console

from grsegments.algebra import linalg as la
from grsegments.algebra.linalg import Subspace
from grsegments.algebra.rep import (
    Rep,
    are_isomorphic,
    closure,
    full_spaces,
    hom_basis,
    is_closed,
    is_indecomposable,
    maximal_submodules,
    sort_canonical,
    spaces_key,
    subrep,
    zero_spaces,
)
from grsegments.config import DEFAULT_BUDGETS, Budgets
from grsegments.errors import BudgetExceeded, InvalidInput
from grsegments.measure import GrMeasure, extend, max_of

console = Console(stderr=True)

Spaces = tuple[Subspace, ...]


# ── Lattice ──────────────────────────────────────────────

@dataclass(frozen=True)
class LatticeEntry:
    spaces: Spaces
    length: int
    indecomposable: bool


@dataclass
class SubmoduleLattice:
    parent: Rep
    entries: list[LatticeEntry]

    def __len__(self) -> int:
        return len(self.entries)

    def indecomposables(self) -> list[LatticeEntry]:
        return [e for e in self.entries if e.indecomposable]


def _length(spaces: Spaces) -> int:
    return sum(U.dim for U in spaces)


def cyclic_submodules(M: Rep, budgets: Budgets = DEFAULT_BUDGETS) -> list[Spaces]:
    """Submodules generated by one vector at one vertex, deduplicated."""
    out: dict[bytes, Spaces] = {}
    for v, d in enumerate(M.dims):
        if d == 0:
            continue
        try:
            vectors = la.enumerate_vectors(d, M.p, budgets.subspace)
        except BudgetExceeded as e:
            raise BudgetExceeded(f"vectors at vertex {v} (dimension {d})", e.needed, e.cap) from e
        for vec in vectors:
            nz = np.flatnonzero(vec)
            if nz.size == 0 or vec[nz[0]] != 1:
                continue
            start = list(zero_spaces(M))
            start[v] = la.span(vec, d, M.p)
            gen = closure(M, start)
            out.setdefault(spaces_key(gen), gen)
    return list(out.values())


def submodules(M: Rep, budgets: Budgets = DEFAULT_BUDGETS) -> SubmoduleLattice:
    gens = cyclic_submodules(M, budgets)
    zero = zero_spaces(M)
    seen: dict[bytes, Spaces] = {spaces_key(zero): zero}
    queue = deque([zero])
    while queue:
        U = queue.popleft()
        for C in gens:
            W = tuple(la.subspace_sum(u, c) for u, c in zip(U, C))
            k = spaces_key(W)
            if k not in seen:
                seen[k] = W
                queue.append(W)
    entries = []
    for k in sorted(seen, key=lambda k: (_length(seen[k]), k)):
        U = seen[k]
        n = _length(U)
        ind = n > 0 and is_indecomposable(subrep(M, U), budgets)
        entries.append(LatticeEntry(spaces=U, length=n, indecomposable=ind))
    return SubmoduleLattice(parent=M, entries=entries)


# ── Memo store ───────────────────────────────────────────

class GrMemo:
    """Isomorphism-class keyed store of measures with atomic insert-if-absent."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._exact: dict[tuple, GrMeasure] = {}
        self._buckets: dict[tuple, list[tuple[Rep, GrMeasure]]] = {}

    def __len__(self) -> int:
        with self._lock:
            return sum(len(b) for b in self._buckets.values())

    @staticmethod
    def _bucket_key(M: Rep) -> tuple:
        return (M.quiver, M.p, M.dims, hom_basis(M, M).dim)

    def lookup(self, M: Rep, budgets: Budgets = DEFAULT_BUDGETS) -> GrMeasure | None:
        exact = (M.quiver, M.key)
        with self._lock:
            hit = self._exact.get(exact)
        if hit is not None:
            return hit
        bkey = self._bucket_key(M)
        with self._lock:
            candidates = list(self._buckets.get(bkey, ()))
        for R, mu in candidates:
            if are_isomorphic(R, M, budgets):
                with self._lock:
                    self._exact.setdefault(exact, mu)
                return mu
        return None

    def insert(self, M: Rep, mu: GrMeasure, budgets: Budgets = DEFAULT_BUDGETS) -> GrMeasure:
        bkey = self._bucket_key(M)
        with self._lock:
            self._exact.setdefault((M.quiver, M.key), mu)
            bucket = self._buckets.setdefault(bkey, [])
            if any(R.key == M.key for R, _ in bucket):
                return mu
            bucket.append((M, mu))
        return mu


_MEMO: GrMemo | None = None


def default_memo() -> GrMemo:
    global _MEMO
    if _MEMO is None:
        _MEMO = GrMemo()
    return _MEMO


# ── Measure ──────────────────────────────────────────────

@dataclass
class GrResult:
    measure: GrMeasure
    witness_chain: list[Spaces]
    gr_submodules: list[Rep] = field(default_factory=list)


def indecomposable_frontier(
    M: Rep,
    include_self: bool,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> list[Spaces]:
    """Indecomposable submodules reached by descending only through decomposables.

    Every indecomposable submodule lies inside one of these, so they carry
    the maximum of μ over all (proper, unless include_self) indecomposables.
    """
    start = full_spaces(M)
    stack: list[Spaces] = [start] if include_self else list(reversed(maximal_submodules(M, start, budgets)))
    seen: set[bytes] = set()
    frontier: list[Spaces] = []
    while stack:
        U = stack.pop()
        k = spaces_key(U)
        if k in seen:
            continue
        seen.add(k)
        if _length(U) == 0:
            continue
        if is_indecomposable(subrep(M, U), budgets):
            frontier.append(U)
        else:
            stack.extend(reversed(maximal_submodules(M, U, budgets)))
    return frontier


def measure_of(M: Rep, budgets: Budgets = DEFAULT_BUDGETS, memo: GrMemo | None = None) -> GrMeasure:
    """μ(M) only; the memoized core of gr_measure."""
    if M.length == 0:
        raise InvalidInput("the GR measure of the zero module is undefined")
    memo = memo if memo is not None else default_memo()
    hit = memo.lookup(M, budgets)
    if hit is not None:
        return hit
    if M.length == 1:
        return memo.insert(M, GrMeasure.of(1), budgets)
    ind = is_indecomposable(M, budgets)
    frontier = indecomposable_frontier(M, include_self=not ind, budgets=budgets)
    best = max_of(measure_of(subrep(M, U), budgets, memo) for U in frontier)
    mu = extend(best, M.length) if ind else best
    return memo.insert(M, mu, budgets)


def _embed(chain: Sequence[Spaces], inside: Spaces) -> list[Spaces]:
    """Re-express subspace tuples of subrep(M, inside) in M's coordinates."""
    out = []
    for spaces in chain:
        out.append(tuple(
            la.span(la.mul(W.basis, U.basis, U.p), U.ambient_dim, U.p) for W, U in zip(spaces, inside)
        ))
    return out


def _dedupe_isoclasses(reps: list[Rep], budgets: Budgets) -> list[Rep]:
    classes: list[Rep] = []
    for R in sort_canonical(reps):
        if not any(are_isomorphic(C, R, budgets) for C in classes):
            classes.append(R)
    return classes


def gr_measure(M: Rep, budgets: Budgets = DEFAULT_BUDGETS, memo: GrMemo | None = None) -> GrResult:
    mu = measure_of(M, budgets, memo)
    if M.length == 1:
        return GrResult(measure=mu, witness_chain=[full_spaces(M)], gr_submodules=[])
    ind = is_indecomposable(M, budgets)
    frontier = indecomposable_frontier(M, include_self=not ind, budgets=budgets)
    scored = [(U, subrep(M, U)) for U in frontier]
    scored = [(U, T, measure_of(T, budgets, memo)) for U, T in scored]
    target = max_of(m for _, _, m in scored)
    winners = [(U, T) for U, T, m in scored if m == target]

    U0, T0 = min(winners, key=lambda w: w[1].sort_key())
    chain = _embed(gr_measure(T0, budgets, memo).witness_chain, U0)
    if ind:
        chain.append(full_spaces(M))
        grs = _dedupe_isoclasses([T for _, T in winners], budgets)
    else:
        grs = []
    return GrResult(measure=mu, witness_chain=chain, gr_submodules=grs)


def gr_submodules(M: Rep, budgets: Budgets = DEFAULT_BUDGETS, memo: GrMemo | None = None) -> list[Rep]:
    if M.length == 0 or not is_indecomposable(M, budgets):
        raise InvalidInput("GR submodules are defined for indecomposable modules")
    return gr_measure(M, budgets, memo).gr_submodules


def gr_filtration(M: Rep, budgets: Budgets = DEFAULT_BUDGETS, memo: GrMemo | None = None) -> list[Rep]:
    """M₁ ⊂ … ⊂ M_t = M, each step a GR inclusion, M₁ simple."""
    if M.length == 0 or not is_indecomposable(M, budgets):
        raise InvalidInput("GR filtrations are defined for indecomposable modules")
    if M.length == 1:
        return [M]
    T = gr_submodules(M, budgets, memo)[0]
    return gr_filtration(T, budgets, memo) + [M]


# ── Oracle ───────────────────────────────────────────────

def _contained(U: Spaces, V: Spaces) -> bool:
    return all(la.subspace_contains(v, u) for u, v in zip(U, V))


def _chains_from(start: int, above: list[list[int]]) -> Iterator[list[int]]:
    stack = [[start]]
    while stack:
        chain = stack.pop()
        yield chain
        for nxt in above[chain[-1]]:
            stack.append(chain + [nxt])


def brute_force_measure(M: Rep, budgets: Budgets = DEFAULT_BUDGETS) -> GrMeasure:
    """Maximum length-set over every chain of indecomposable submodules.

    Enumerates all subspace tuples directly; shares no code path with
    the frontier recursion beyond closure and indecomposability tests.
    """
    if M.length == 0:
        raise InvalidInput("the GR measure of the zero module is undefined")
    per_vertex = [la.enumerate_subspaces(d, M.p, budgets.subspace) for d in M.dims]
    total = int(np.prod([len(s) for s in per_vertex]))
    if total > budgets.end:
        raise BudgetExceeded("subspace tuples for the oracle", total, budgets.end)
    ind: list[Spaces] = []
    for U in itertools.product(*per_vertex):
        if _length(U) and is_closed(M, U) and is_indecomposable(subrep(M, U), budgets):
            ind.append(U)
    ind.sort(key=_length)
    above = [
        [j for j, V in enumerate(ind) if _length(V) > _length(U) and _contained(U, V)]
        for U in ind
    ]
    best: GrMeasure | None = None
    for i in range(len(ind)):
        for chain in _chains_from(i, above):
            lengths = GrMeasure(elements=tuple(_length(ind[k]) for k in chain))
            if best is None or lengths > best:
                best = lengths
    assert best is not None
    return best
