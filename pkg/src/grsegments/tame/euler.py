"""Euler form, Coxeter matrix, δ and defect for acyclic extended Dynkin quivers.

Dimension vectors are column vectors indexed by vertex. E = I − A where
A[s, t] counts arrows s → t, so ⟨d, e⟩ = dᵀ E e. The path matrix S = E⁻¹
has S[v, w] = number of paths v → w, hence dim P(v) = S[v, :] and
dim I(v) = S[:, v].
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import networkx as nx
import numpy as np

from grsegments.algebra.rep import Quiver
from grsegments.errors import NotTame

_EIG_TOL = 1e-8


@dataclass(frozen=True)
class QuiverType:
    family: str                      # "A", "D" or "E"
    params: tuple[int, ...]          # (p, q) for Ã, (n,) for D̃ and Ẽ

    def __str__(self) -> str:
        if self.family == "A":
            return f"Ã_{{{self.params[0]},{self.params[1]}}}"
        mark = "D̃" if self.family == "D" else "Ẽ"
        return f"{mark}_{self.params[0]}"

    @property
    def expected_b(self) -> int:
        """Number of exceptional quasi-simples: the total rank of the non-homogeneous tubes."""
        if self.family == "A":
            p, q = self.params
            if p == 1 and q == 1:
                return 0
            if p == 1 or q == 1:
                return p + q - 1
            return p + q
        if self.family == "D":
            return self.params[0] + 2
        return {6: 8, 7: 9, 8: 10}[self.params[0]]


@dataclass(frozen=True, eq=False)
class EulerData:
    quiver: Quiver
    euler_matrix: np.ndarray
    path_matrix: np.ndarray
    coxeter_matrix: np.ndarray       # acts on column dimension vectors, dim τM = Φ·dim M
    coxeter_inverse: np.ndarray
    delta: np.ndarray
    defect_sign: int                 # +1 or −1, fixed so that projectives have negative defect
    quiver_type: QuiverType

    @property
    def delta_length(self) -> int:
        return int(self.delta.sum())

    def form(self, d, e) -> int:
        return int(np.asarray(d) @ self.euler_matrix @ np.asarray(e))

    def tau(self, d) -> np.ndarray:
        return self.coxeter_matrix @ np.asarray(d, dtype=np.int64)

    def tau_inverse(self, d) -> np.ndarray:
        return self.coxeter_inverse @ np.asarray(d, dtype=np.int64)

    def projective_dims(self, v: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.path_matrix[v, :])

    def injective_dims(self, v: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.path_matrix[:, v])


def path_matrix(Q: Quiver) -> np.ndarray:
    """Σ Aᵏ, exact; A is nilpotent for an acyclic quiver."""
    A = Q.arrow_count_matrix()
    n = Q.vertex_count
    S = np.eye(n, dtype=np.int64)
    term = np.eye(n, dtype=np.int64)
    for _ in range(n):
        term = term @ A
        if not term.any():
            break
        S = S + term
    return S


def _radical_generator(sym: np.ndarray) -> np.ndarray:
    """The minimal positive integer vector spanning the one-dimensional radical."""
    w, V = np.linalg.eigh(sym.astype(float))
    if w.min() < -_EIG_TOL:
        raise NotTame("the symmetrized Euler form is indefinite (wild type)")
    zero = np.flatnonzero(np.abs(w) < _EIG_TOL)
    if zero.size == 0:
        raise NotTame("the symmetrized Euler form is positive definite (finite type)")
    if zero.size > 1:
        raise NotTame(f"the symmetrized Euler form has a {zero.size}-dimensional radical")
    v = V[:, zero[0]]
    v = v if v.sum() > 0 else -v
    if v.min() <= _EIG_TOL:
        raise NotTame("the radical vector is not sincere")
    d = np.rint(v / v.min()).astype(np.int64)
    g = 0
    for x in d:
        g = gcd(g, int(x))
    d = d // g
    if (sym @ d).any():
        raise NotTame(f"rounded radical vector {d.tolist()} fails the exact check")
    return d


def _cycle_orientation(Q: Quiver) -> tuple[int, int]:
    """(arrows along, arrows against) a traversal of the unique cycle."""
    used: set[int] = set()
    v, along, against = 0, 0, 0
    for _ in Q.arrows:
        a = next(i for i, (s, t) in enumerate(Q.arrows) if i not in used and v in (s, t))
        used.add(a)
        s, t = Q.arrows[a]
        if s == v:
            along += 1
            v = t
        else:
            against += 1
            v = s
    return along, against


def classify(Q: Quiver, delta: np.ndarray) -> QuiverType:
    n = Q.vertex_count
    if len(Q.arrows) == n:
        if any(Q.underlying_graph().degree(v) != 2 for v in range(n)):
            raise NotTame("one cycle but not a cycle graph")
        p, q = sorted(_cycle_orientation(Q), reverse=True)
        return QuiverType("A", (p, q))
    if not nx.is_tree(nx.Graph(Q.underlying_graph())):
        raise NotTame(f"underlying graph of {Q.name!r} is neither a cycle nor a tree")
    top = int(delta.max())
    if top == 2:
        return QuiverType("D", (n - 1,))
    if top in (3, 4, 6):
        return QuiverType("E", ({3: 6, 4: 7, 6: 8}[top],))
    raise NotTame(f"unexpected maximal δ coordinate {top}")


def euler_data(Q: Quiver) -> EulerData:
    if not Q.is_acyclic():
        raise NotTame(f"quiver {Q.name!r} has oriented cycles; only acyclic orientations are supported")
    n = Q.vertex_count
    A = Q.arrow_count_matrix()
    E = np.eye(n, dtype=np.int64) - A
    S = path_matrix(Q)
    if not np.array_equal(S @ E, np.eye(n, dtype=np.int64)):
        raise NotTame("path matrix is not the inverse of the Euler matrix")
    delta = _radical_generator(E + E.T)

    phi = -S @ E.T
    phi_inv = -S.T @ E
    for v in range(n):
        if not np.array_equal(phi @ S[v, :], -S[:, v]):
            raise NotTame(f"Coxeter matrix check failed at P({v})")

    proj_defects = [int(delta @ E @ S[v, :]) for v in range(n)]
    if all(x < 0 for x in proj_defects):
        sign = 1
    elif all(x > 0 for x in proj_defects):
        sign = -1
    else:
        raise NotTame(f"projective defects have mixed signs: {proj_defects}")

    return EulerData(
        quiver=Q,
        euler_matrix=E,
        path_matrix=S,
        coxeter_matrix=phi,
        coxeter_inverse=phi_inv,
        delta=delta,
        defect_sign=sign,
        quiver_type=classify(Q, delta),
    )


def defect(ed: EulerData, d) -> int:
    """⟨δ, d⟩ with the sign fixed so that projectives are negative."""
    return ed.defect_sign * int(ed.delta @ ed.euler_matrix @ np.asarray(d, dtype=np.int64))


def expected_b(ed: EulerData) -> int:
    return ed.quiver_type.expected_b


def is_sink_source(Q: Quiver) -> bool:
    return all(Q.is_sink(v) or Q.is_source(v) for v in range(Q.vertex_count))


def vertex_order(Q: Quiver) -> list[int]:
    """Admissible sink ordering: repeatedly remove the smallest sink of what is left."""
    if not Q.is_acyclic():
        raise NotTame("admissible orderings exist only for acyclic quivers")
    remaining = set(range(Q.vertex_count))
    order = []
    while remaining:
        sinks = [
            v for v in sorted(remaining)
            if not any(s == v and t in remaining for s, t in Q.arrows)
        ]
        order.append(sinks[0])
        remaining.remove(sinks[0])
    return order
