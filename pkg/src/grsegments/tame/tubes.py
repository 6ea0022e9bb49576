"""Tubes of the regular component: quasi-simples, τ-orbits, ranks and X_i chains.

Quasi-simples are found from seeds (defect-zero simples, defect-zero
quotients of projectives and submodules of injectives) and, for the
homogeneous tubes, by enumerating every representation of dimension δ.
Only F_p-rational points of the projective line give homogeneous tubes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from rich.console import Console

from grsegments.algebra import linalg as la
from grsegments.algebra.gr import submodules
from grsegments.algebra.rep import (
    Rep,
    are_isomorphic,
    ext_cocycles,
    extension,
    is_indecomposable,
    quotient,
    subrep,
)
from grsegments.config import DEFAULT_BUDGETS, Budgets
from grsegments.errors import BudgetExceeded, ConstructionError, InvalidInput
from grsegments.tame.dedup import dedup_reps
from grsegments.tame.euler import EulerData, defect
from grsegments.tame.functors import ar_translate

console = Console(stderr=True)


@dataclass
class Tube:
    orbit: list[Rep]                 # orbit[k] ≅ τᵏ orbit[0]

    @property
    def rank(self) -> int:
        return len(self.orbit)

    @property
    def homogeneous(self) -> bool:
        return self.rank == 1

    def dims_sum(self) -> tuple[int, ...]:
        return tuple(int(x) for x in np.sum([X.dims for X in self.orbit], axis=0))

    def shifted(self, k: int, j: int) -> Rep:
        """A module isomorphic to τ⁻ʲ of the k-th quasi-simple."""
        return self.orbit[(k - j) % self.rank]


def is_quasi_simple(X: Rep, ed: EulerData, budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    """Indecomposable, defect zero, and no nonzero proper submodule of defect zero."""
    if X.length == 0 or defect(ed, X.dims) != 0:
        return False
    if not is_indecomposable(X, budgets):
        return False
    for entry in submodules(X, budgets).entries:
        if 0 < entry.length < X.length:
            dims = tuple(U.dim for U in entry.spaces)
            if defect(ed, dims) == 0:
                return False
    return True


def tau_orbit(X: Rep, budgets: Budgets = DEFAULT_BUDGETS) -> list[Rep]:
    """[X, τX, τ²X, …] up to the first return to X."""
    orbit = [X]
    Y = X
    for _ in range(X.quiver.vertex_count + 1):
        Y = ar_translate(Y, "tau", budgets, check=False)
        if Y is None:
            raise InvalidInput(f"{X!r} is not regular: its τ-orbit reaches a projective")
        if are_isomorphic(Y, X, budgets):
            return orbit
        orbit.append(Y)
    raise ConstructionError(f"τ-orbit of {X!r} did not close within {len(orbit)} steps")


def rank(X: Rep, ed: EulerData, budgets: Budgets = DEFAULT_BUDGETS) -> int:
    if not is_quasi_simple(X, ed, budgets):
        raise InvalidInput(f"{X!r} is not a regular quasi-simple")
    return len(tau_orbit(X, budgets))


def _indecomposable_extension(Z: Rep, Y: Rep, budgets: Budgets) -> Rep:
    """Middle term of some non-split 0 → Y → E → Z → 0 with E indecomposable."""
    cocycles = ext_cocycles(Z, Y)
    if not cocycles:
        raise ConstructionError(f"Ext¹({Z!r}, {Y!r}) vanishes")
    for g in cocycles:
        E = extension(Z, Y, g)
        if is_indecomposable(E, budgets):
            return E
    basis = np.stack(cocycles)
    for c in la.coefficient_rows(len(cocycles), Z.p, budgets.end):
        if np.count_nonzero(c) < 2:
            continue
        E = extension(Z, Y, la.mul(c.reshape(1, -1), basis, Z.p)[0])
        if is_indecomposable(E, budgets):
            return E
    raise ConstructionError(f"no indecomposable extension of {Z!r} by {Y!r}")


def x_chain(X: Rep, n: int, budgets: Budgets = DEFAULT_BUDGETS) -> list[Rep]:
    """[X₁, …, X_n]: X_j is an extension of τ^{-(j-1)}X by X_{j-1}."""
    if n < 1:
        raise InvalidInput("quasi-length must be at least 1")
    chain = [X]
    Z = X
    for _ in range(2, n + 1):
        Z = ar_translate(Z, "tau_inverse", budgets, check=False)
        if Z is None:
            raise InvalidInput(f"{X!r} is not regular")
        chain.append(_indecomposable_extension(Z, chain[-1], budgets))
    return chain


def build_x_chain(X: Rep, i: int, budgets: Budgets = DEFAULT_BUDGETS) -> Rep:
    """The regular module with quasi-socle X and quasi-length i."""
    return x_chain(X, i, budgets)[-1]


# ── Detection ────────────────────────────────────────────

def seed_candidates(ed: EulerData, p: int, budgets: Budgets = DEFAULT_BUDGETS) -> list[Rep]:
    """Defect-zero indecomposables among simples, quotients of P(v) and submodules of I(v)."""
    Q = ed.quiver
    out: list[Rep] = []
    for v in range(Q.vertex_count):
        S = Rep.simple(Q, p, v)
        if defect(ed, S.dims) == 0:
            out.append(S)
    for v in range(Q.vertex_count):
        for base, take in ((Rep.projective(Q, p, v), quotient), (Rep.injective(Q, p, v), subrep)):
            for entry in submodules(base, budgets).entries:
                if not 0 < entry.length < base.length:
                    continue
                M = take(base, entry.spaces)
                if defect(ed, M.dims) == 0 and is_indecomposable(M, budgets):
                    out.append(M)
    return out


def homogeneous_candidates(ed: EulerData, p: int, budgets: Budgets = DEFAULT_BUDGETS) -> list[Rep]:
    """Indecomposable, τ-fixed representations of dimension δ, one per isoclass."""
    Q = ed.quiver
    dims = tuple(int(x) for x in ed.delta)
    shapes = [(dims[t], dims[s]) for s, t in Q.arrows]
    n_entries = sum(r * c for r, c in shapes)
    total = p**n_entries
    if total > budgets.end:
        raise BudgetExceeded(f"representations of dimension {dims} over F_{p}", total, budgets.end)
    console.print(f"[dim]Scanning {total} representations of dimension δ={dims}...[/]")
    found: list[Rep] = []
    for values in itertools.product(range(p), repeat=n_entries):
        maps, off = [], 0
        for r, c in shapes:
            maps.append(np.array(values[off:off + r * c], dtype=np.int64).reshape(r, c))
            off += r * c
        M = Rep(quiver=Q, p=p, dims=dims, maps=tuple(maps))
        if is_indecomposable(M, budgets):
            found.append(M)
    classes = dedup_reps(found, budgets, what="δ-dimensional indecomposables")
    return [
        M for M in classes
        if (T := ar_translate(M, "tau", budgets, check=False)) is not None
        and are_isomorphic(T, M, budgets)
    ]


def detect_tubes(ed: EulerData, p: int, budgets: Budgets = DEFAULT_BUDGETS) -> list[Tube]:
    """Every tube reachable from the seeds, exceptional tubes first."""
    candidates = seed_candidates(ed, p, budgets) + homogeneous_candidates(ed, p, budgets)
    quasi = [X for X in dedup_reps(candidates, budgets, what="regular seeds") if is_quasi_simple(X, ed, budgets)]

    tubes: list[Tube] = []
    covered: list[Rep] = []
    for X in quasi:
        if any(are_isomorphic(X, Y, budgets) for Y in covered):
            continue
        orbit = tau_orbit(X, budgets)
        covered.extend(orbit)
        tubes.append(Tube(orbit=orbit))
    tubes.sort(key=lambda t: (t.homogeneous, t.orbit[0].sort_key()))

    n_exc = sum(t.rank for t in tubes if not t.homogeneous)
    n_hom = sum(1 for t in tubes if t.homogeneous)
    console.print(f"[dim]Detected {len(tubes)} tubes: {n_exc} exceptional quasi-simples, {n_hom} homogeneous tubes[/]")
    return tubes
