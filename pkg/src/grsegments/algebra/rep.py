"""Quiver representations over F_p.

Hom spaces are solved as the nullspace of the commutation system
f_t · M_a = N_a · f_s (row-major vectorisation, Kronecker blocks).
Indecomposability and isomorphism are decided exactly by enumerating
End/Hom elements under a budget, after cheap Fitting-style splitting.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import networkx as nx
import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from grsegments.algebra import linalg as la
from grsegments.algebra.linalg import Matrix, Subspace
from grsegments.config import DEFAULT_BUDGETS, Budgets
from grsegments.errors import InvalidInput, Undecided

_BATCH = 4096


# ── Quiver ───────────────────────────────────────────────

class Quiver(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = "quiver"
    vertex_count: int
    arrows: tuple[tuple[int, int], ...]   # (source, target), multiple arrows allowed

    @model_validator(mode="after")
    def _valid(self) -> Quiver:
        if self.vertex_count < 1:
            raise ValueError("a quiver needs at least one vertex")
        for s, t in self.arrows:
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise ValueError(f"arrow ({s},{t}) references an unknown vertex")
        if not nx.is_connected(self.underlying_graph()):
            raise ValueError(f"quiver {self.name!r} is not connected")
        return self

    def graph(self) -> nx.MultiDiGraph:
        G = nx.MultiDiGraph()
        G.add_nodes_from(range(self.vertex_count))
        for i, (s, t) in enumerate(self.arrows):
            G.add_edge(s, t, key=i)
        return G

    def underlying_graph(self) -> nx.MultiGraph:
        G = nx.MultiGraph()
        G.add_nodes_from(range(self.vertex_count))
        G.add_edges_from(self.arrows)
        return G

    def is_acyclic(self) -> bool:
        return nx.is_directed_acyclic_graph(self.graph())

    def incoming(self, v: int) -> list[int]:
        return [i for i, (_, t) in enumerate(self.arrows) if t == v]

    def outgoing(self, v: int) -> list[int]:
        return [i for i, (s, _) in enumerate(self.arrows) if s == v]

    def is_sink(self, v: int) -> bool:
        return not self.outgoing(v)

    def is_source(self, v: int) -> bool:
        return not self.incoming(v)

    def sinks(self) -> list[int]:
        return [v for v in range(self.vertex_count) if self.is_sink(v)]

    def sources(self) -> list[int]:
        return [v for v in range(self.vertex_count) if self.is_source(v)]

    def reflected(self, v: int) -> Quiver:
        """Same quiver with every arrow at v reversed (arrow indices kept)."""
        arrows = tuple((t, s) if v in (s, t) else (s, t) for s, t in self.arrows)
        return Quiver(name=self.name, vertex_count=self.vertex_count, arrows=arrows)

    def arrow_count_matrix(self) -> np.ndarray:
        A = np.zeros((self.vertex_count, self.vertex_count), dtype=np.int64)
        for s, t in self.arrows:
            A[s, t] += 1
        return A

    def paths_from(self, start: int) -> list[tuple[int, tuple[int, ...]]]:
        """(end vertex, arrow sequence) for every path leaving `start`, BFS order."""
        return self._paths(start, forward=True)

    def paths_to(self, end: int) -> list[tuple[int, tuple[int, ...]]]:
        """(start vertex, arrow sequence) for every path entering `end`, BFS order."""
        return self._paths(end, forward=False)

    def _paths(self, v: int, forward: bool) -> list[tuple[int, tuple[int, ...]]]:
        if not self.is_acyclic():
            raise InvalidInput("path enumeration needs an acyclic quiver")
        out = []
        queue: deque[tuple[int, tuple[int, ...]]] = deque([(v, ())])
        while queue:
            cur, path = queue.popleft()
            out.append((cur, path))
            if forward:
                for a in self.outgoing(cur):
                    queue.append((self.arrows[a][1], path + (a,)))
            else:
                for a in self.incoming(cur):
                    queue.append((self.arrows[a][0], (a,) + path))
        return out


# ── Representation ───────────────────────────────────────

@dataclass(frozen=True, eq=False)
class Rep:
    quiver: Quiver
    p: int
    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]        # maps[a] has shape (dims[target], dims[source])

    def __post_init__(self) -> None:
        q = self.quiver
        if len(self.dims) != q.vertex_count:
            raise InvalidInput(f"expected {q.vertex_count} dimensions, got {len(self.dims)}")
        if any(d < 0 for d in self.dims):
            raise InvalidInput(f"negative dimension in {self.dims}")
        if len(self.maps) != len(q.arrows):
            raise InvalidInput(f"expected {len(q.arrows)} maps, got {len(self.maps)}")
        fixed = []
        for a, ((s, t), m) in enumerate(zip(q.arrows, self.maps)):
            m = np.asarray(m, dtype=np.int64)
            shape = (self.dims[t], self.dims[s])
            if m.size == 0 and shape[0] * shape[1] == 0:
                m = la.zeros(*shape)
            if m.shape != shape:
                raise InvalidInput(f"arrow {a}: matrix shape {m.shape}, expected {shape}")
            fixed.append(np.mod(m, self.p))
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "maps", tuple(fixed))

    @property
    def length(self) -> int:
        return sum(self.dims)

    @property
    def dimv(self) -> tuple[int, ...]:
        return self.dims

    @cached_property
    def key(self) -> bytes:
        parts = [np.array([self.p, *self.dims], dtype=np.int64).tobytes()]
        parts += [m.tobytes() for m in self.maps]
        return b"|".join(parts)

    def sort_key(self) -> tuple:
        return (self.length, self.dims, self.key)

    def __repr__(self) -> str:
        return f"Rep({self.quiver.name}, dims={self.dims})"

    # constructors

    @classmethod
    def from_maps(cls, quiver: Quiver, p: int, dims: Sequence[int], maps: Sequence) -> Rep:
        mats = []
        for (s, t), m in zip(quiver.arrows, maps):
            mats.append(la.as_matrix(m, p, cols=dims[s]).reshape(dims[t], dims[s]))
        return cls(quiver=quiver, p=p, dims=tuple(dims), maps=tuple(mats))

    @classmethod
    def zero(cls, quiver: Quiver, p: int) -> Rep:
        dims = (0,) * quiver.vertex_count
        return cls(quiver=quiver, p=p, dims=dims, maps=tuple(la.zeros(0, 0) for _ in quiver.arrows))

    @classmethod
    def simple(cls, quiver: Quiver, p: int, v: int) -> Rep:
        dims = tuple(1 if w == v else 0 for w in range(quiver.vertex_count))
        maps = tuple(la.zeros(dims[t], dims[s]) for s, t in quiver.arrows)
        return cls(quiver=quiver, p=p, dims=dims, maps=maps)

    @classmethod
    def projective(cls, quiver: Quiver, p: int, v: int) -> Rep:
        """P(v): basis of P(v)_w is the set of paths v → w."""
        index: dict[tuple[int, ...], tuple[int, int]] = {}
        counts = [0] * quiver.vertex_count
        for end, path in quiver.paths_from(v):
            index[path] = (end, counts[end])
            counts[end] += 1
        maps = [la.zeros(counts[t], counts[s]) for s, t in quiver.arrows]
        for path, (end, i) in index.items():
            for a in quiver.outgoing(end):
                _, j = index[path + (a,)]
                maps[a][j, i] = 1
        return cls(quiver=quiver, p=p, dims=tuple(counts), maps=tuple(maps))

    @classmethod
    def injective(cls, quiver: Quiver, p: int, v: int) -> Rep:
        """I(v): basis of I(v)_w is dual to the paths w → v."""
        index: dict[tuple[int, ...], tuple[int, int]] = {}
        counts = [0] * quiver.vertex_count
        for start, path in quiver.paths_to(v):
            index[path] = (start, counts[start])
            counts[start] += 1
        maps = [la.zeros(counts[t], counts[s]) for s, t in quiver.arrows]
        for path, (start, i) in index.items():
            if path:
                a = path[0]
                _, j = index[path[1:]]
                maps[a][j, i] = 1
        return cls(quiver=quiver, p=p, dims=tuple(counts), maps=tuple(maps))

    def direct_sum(self, other: Rep) -> Rep:
        _check_compatible(self, other)
        maps = []
        for (s, t), A, B in zip(self.quiver.arrows, self.maps, other.maps):
            m = la.zeros(self.dims[t] + other.dims[t], self.dims[s] + other.dims[s])
            m[: self.dims[t], : self.dims[s]] = A
            m[self.dims[t]:, self.dims[s]:] = B
            maps.append(m)
        dims = tuple(x + y for x, y in zip(self.dims, other.dims))
        return Rep(quiver=self.quiver, p=self.p, dims=dims, maps=tuple(maps))

    def change_basis(self, gs: Sequence[Matrix]) -> Rep:
        """The isomorphic representation g_t · M_a · g_s⁻¹."""
        maps = []
        for (s, t), m in zip(self.quiver.arrows, self.maps):
            maps.append(la.mul(la.mul(gs[t], m, self.p), la.inverse(gs[s], self.p), self.p))
        return Rep(quiver=self.quiver, p=self.p, dims=self.dims, maps=tuple(maps))

    def with_quiver(self, quiver: Quiver) -> Rep:
        return Rep(quiver=quiver, p=self.p, dims=self.dims, maps=self.maps)

    # serialization

    def to_dict(self) -> dict:
        return {
            "dims": list(self.dims),
            "maps": [{"arrow": a, "entries": m.tolist()} for a, m in enumerate(self.maps)],
        }

    @classmethod
    def from_dict(cls, quiver: Quiver, p: int, data: dict) -> Rep:
        try:
            dims = tuple(int(d) for d in data["dims"])
            by_arrow = {int(m["arrow"]): m["entries"] for m in data.get("maps", [])}
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInput(f"malformed representation: {e}") from e
        if len(dims) != quiver.vertex_count:
            raise InvalidInput(f"expected {quiver.vertex_count} dimensions, got {len(dims)}")
        maps = []
        for a, (s, t) in enumerate(quiver.arrows):
            entries = by_arrow.get(a, [])
            m = np.asarray(entries, dtype=np.int64) if entries else la.zeros(dims[t], dims[s])
            if dims[t] * dims[s] and m.shape != (dims[t], dims[s]):
                raise InvalidInput(f"arrow {a}: entries shape {m.shape}, expected {(dims[t], dims[s])}")
            maps.append(m.reshape(dims[t], dims[s]))
        return cls(quiver=quiver, p=p, dims=dims, maps=tuple(maps))


def _check_compatible(M: Rep, N: Rep) -> None:
    if M.quiver != N.quiver:
        raise InvalidInput(f"quiver mismatch: {M.quiver.name} vs {N.quiver.name}")
    if M.p != N.p:
        raise InvalidInput(f"field mismatch: F_{M.p} vs F_{N.p}")


def sort_canonical(reps: list[Rep]) -> list[Rep]:
    return sorted(reps, key=Rep.sort_key)


# ── Hom spaces ───────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class HomSpace:
    source: Rep
    target: Rep
    flat: Matrix                     # basis elements as rows, vertex blocks concatenated

    @property
    def dim(self) -> int:
        return self.flat.shape[0]

    @cached_property
    def blocks(self) -> list[tuple[int, int, int, int]]:
        """(start, stop, rows, cols) of each vertex block in a flat vector."""
        out, off = [], 0
        for v in range(self.source.quiver.vertex_count):
            r, c = self.target.dims[v], self.source.dims[v]
            out.append((off, off + r * c, r, c))
            off += r * c
        return out

    def unflatten(self, vec: np.ndarray) -> tuple[Matrix, ...]:
        return tuple(vec[a:b].reshape(r, c) for a, b, r, c in self.blocks)

    @property
    def basis(self) -> list[tuple[Matrix, ...]]:
        return [self.unflatten(row) for row in self.flat]

    def batches(self, budget: int) -> Iterator[Matrix]:
        """Every element of the space as flat rows, in batches."""
        p = self.source.p
        total = p**self.dim
        if total > budget:
            raise Undecided(f"enumerating Hom of dimension {self.dim} over F_{p}", total, budget)
        coeffs = la.coefficient_rows(self.dim, p, budget)
        for i in range(0, coeffs.shape[0], _BATCH):
            yield np.mod(coeffs[i:i + _BATCH] @ self.flat, p)


def hom_basis(M: Rep, N: Rep) -> HomSpace:
    _check_compatible(M, N)
    q, p = M.quiver, M.p
    offsets, off = [], 0
    for v in range(q.vertex_count):
        offsets.append(off)
        off += N.dims[v] * M.dims[v]
    nvars = off
    rows = sum(N.dims[t] * M.dims[s] for s, t in q.arrows)
    C = np.zeros((rows, nvars), dtype=np.int64)
    r = 0
    for a, (s, t) in enumerate(q.arrows):
        h = N.dims[t] * M.dims[s]
        if h:
            ft = np.kron(la.identity(N.dims[t]), M.maps[a].T)
            fs = np.kron(N.maps[a], la.identity(M.dims[s]))
            C[r:r + h, offsets[t]:offsets[t] + ft.shape[1]] += ft
            C[r:r + h, offsets[s]:offsets[s] + fs.shape[1]] -= fs
        r += h
    flat = la.nullspace_basis(np.mod(C, p), p) if nvars else la.zeros(0, 0)
    return HomSpace(source=M, target=N, flat=flat)


def _identity_flat(E: HomSpace) -> np.ndarray:
    vec = np.zeros(E.flat.shape[1], dtype=np.int64)
    for a, b, r, _ in E.blocks:
        vec[a:b] = la.identity(r).reshape(-1)
    return vec


def _matrix_power(m: Matrix, k: int, p: int) -> Matrix:
    out = la.identity(m.shape[0])
    for _ in range(k):
        out = la.mul(out, m, p)
    return out


def _image_spaces(M: Rep, f: Sequence[Matrix]) -> tuple[Subspace, ...]:
    return tuple(la.span(fv.T, M.dims[v], M.p) for v, fv in enumerate(f))


def _kernel_spaces(M: Rep, f: Sequence[Matrix]) -> tuple[Subspace, ...]:
    return tuple(
        Subspace(ambient_dim=M.dims[v], basis=la.nullspace_basis(fv, M.p), p=M.p)
        for v, fv in enumerate(f)
    )


def _fitting_split(M: Rep, E: HomSpace) -> tuple[Matrix, ...] | None:
    """An endomorphism power f^N that is neither zero nor invertible, if one is at hand."""
    p = M.p
    power = max(M.dims)
    ident = _identity_flat(E)
    for row in E.flat:
        for c in range(p):
            f = E.unflatten(np.mod(row + c * ident, p))
            g = tuple(_matrix_power(fv, power, p) for fv in f)
            r = sum(la.rank(gv, p) for gv in g)
            if 0 < r < M.length:
                return g
    return None


def _find_idempotent(M: Rep, E: HomSpace, budgets: Budgets) -> tuple[Matrix, ...] | None:
    p = M.p
    ident = _identity_flat(E)
    for F in E.batches(budgets.end):
        ok = np.ones(F.shape[0], dtype=bool)
        for a, b, r, _ in E.blocks:
            if r == 0:
                continue
            X = F[:, a:b].reshape(-1, r, r)
            ok &= np.all(np.mod(X @ X, p) == X, axis=(1, 2))
        ok &= F.any(axis=1)
        ok &= ~np.all(F == ident, axis=1)
        hits = np.flatnonzero(ok)
        if hits.size:
            return E.unflatten(F[hits[0]])
    return None


def _splitting(M: Rep, budgets: Budgets) -> tuple[Matrix, ...] | None:
    """An endomorphism whose image and kernel split M, or None if M is indecomposable."""
    E = hom_basis(M, M)
    if E.dim == 1:
        return None
    g = _fitting_split(M, E)
    if g is not None:
        return g
    return _find_idempotent(M, E, budgets)


def is_indecomposable(M: Rep, budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    if M.length == 0:
        raise InvalidInput("the zero representation is neither decomposable nor indecomposable")
    return _splitting(M, budgets) is None


def are_isomorphic(M: Rep, N: Rep, budgets: Budgets = DEFAULT_BUDGETS) -> bool:
    _check_compatible(M, N)
    if M.dims != N.dims:
        return False
    if M.key == N.key or M.length == 0:
        return True
    H = hom_basis(M, N)
    if H.dim == 0 or H.dim != hom_basis(M, M).dim or H.dim != hom_basis(N, N).dim:
        return False
    if hom_basis(N, M).dim != H.dim:
        return False
    p = M.p
    for F in H.batches(budgets.end):
        for vec in F:
            if all(la.is_invertible(fv, p) for fv in H.unflatten(vec)):
                return True
    return False


def decompose(M: Rep, budgets: Budgets = DEFAULT_BUDGETS) -> list[Rep]:
    if M.length == 0:
        return []
    g = _splitting(M, budgets)
    if g is None:
        return [M]
    parts = decompose(subrep(M, _image_spaces(M, g)), budgets)
    parts += decompose(subrep(M, _kernel_spaces(M, g)), budgets)
    return sort_canonical(parts)


# ── Sub- and quotient representations ────────────────────

def _check_spaces(M: Rep, spaces: Sequence[Subspace]) -> None:
    if len(spaces) != M.quiver.vertex_count:
        raise InvalidInput(f"expected {M.quiver.vertex_count} subspaces, got {len(spaces)}")
    for v, U in enumerate(spaces):
        if U.ambient_dim != M.dims[v] or U.p != M.p:
            raise InvalidInput(f"vertex {v}: subspace of F_{U.p}^{U.ambient_dim}, expected F_{M.p}^{M.dims[v]}")


def _arrow_images(M: Rep, a: int, U: Subspace) -> Matrix:
    """Rows spanning M_a(U), as row vectors in the target space."""
    return la.mul(U.basis, M.maps[a].T, M.p)


def is_closed(M: Rep, spaces: Sequence[Subspace]) -> bool:
    _check_spaces(M, spaces)
    for a, (s, t) in enumerate(M.quiver.arrows):
        if not la.vectors_in(spaces[t], _arrow_images(M, a, spaces[s])):
            return False
    return True


def subrep(M: Rep, spaces: Sequence[Subspace]) -> Rep:
    """Induced representation on an arrow-closed subspace tuple, in RREF bases."""
    if not is_closed(M, spaces):
        raise InvalidInput("subspace tuple is not closed under the arrow maps")
    maps = []
    for a, (s, t) in enumerate(M.quiver.arrows):
        images = _arrow_images(M, a, spaces[s])
        maps.append(la.coordinates(spaces[t], images).T.copy())
    dims = tuple(U.dim for U in spaces)
    return Rep(quiver=M.quiver, p=M.p, dims=dims, maps=tuple(maps))


def quotient(M: Rep, spaces: Sequence[Subspace]) -> Rep:
    """M / U with the standard vectors at non-pivot columns as quotient basis."""
    if not is_closed(M, spaces):
        raise InvalidInput("subspace tuple is not closed under the arrow maps")
    maps = []
    for a, (s, t) in enumerate(M.quiver.arrows):
        Us = spaces[s]
        complement = la.identity(M.dims[s])[[j for j in range(M.dims[s]) if j not in set(Us.pivots)]]
        images = la.mul(complement, M.maps[a].T, M.p)
        maps.append(la.reduce_modulo(spaces[t], images).T.copy())
    dims = tuple(M.dims[v] - U.dim for v, U in enumerate(spaces))
    return Rep(quiver=M.quiver, p=M.p, dims=dims, maps=tuple(maps))


def full_spaces(M: Rep) -> tuple[Subspace, ...]:
    return tuple(la.full_subspace(d, M.p) for d in M.dims)


def zero_spaces(M: Rep) -> tuple[Subspace, ...]:
    return tuple(la.zero_subspace(d, M.p) for d in M.dims)


def spaces_key(spaces: Sequence[Subspace]) -> bytes:
    return b"/".join(U.key for U in spaces)


def closure(M: Rep, spaces: Sequence[Subspace]) -> tuple[Subspace, ...]:
    """Smallest submodule containing the given subspaces."""
    _check_spaces(M, spaces)
    cur = list(spaces)
    changed = True
    while changed:
        changed = False
        for a, (s, t) in enumerate(M.quiver.arrows):
            images = _arrow_images(M, a, cur[s])
            if not la.vectors_in(cur[t], images):
                cur[t] = la.subspace_sum(cur[t], la.span(images, M.dims[t], M.p))
                changed = True
    return tuple(cur)


def maximal_submodules(
    M: Rep,
    spaces: Sequence[Subspace],
    budgets: Budgets = DEFAULT_BUDGETS,
) -> list[tuple[Subspace, ...]]:
    """Colength-one submodules of the submodule `spaces` of M.

    A maximal submodule differs from U at one vertex x only, by a hyperplane
    containing the images of the arrows entering x.
    """
    p, q = M.p, M.quiver
    out = []
    for x in range(q.vertex_count):
        Ux = spaces[x]
        k = Ux.dim
        if k == 0:
            continue
        incoming = [a for a in q.incoming(x) if q.arrows[a][0] != x]
        rad_rows = [_arrow_images(M, a, spaces[q.arrows[a][0]]) for a in incoming]
        rad = np.concatenate(rad_rows, axis=0) if rad_rows else la.zeros(0, M.dims[x])
        rad_coords = la.span(la.coordinates(Ux, rad), k, p)
        ann = la.annihilator(rad_coords)
        if ann.dim == 0:
            continue
        for c in la.coefficient_rows(ann.dim, p, budgets.subspace):
            nz = np.flatnonzero(c)
            if nz.size == 0 or c[nz[0]] != 1:
                continue
            phi = la.mul(c.reshape(1, -1), ann.basis, p)
            H = la.mul(la.nullspace_basis(phi, p), Ux.basis, p)
            candidate = list(spaces)
            candidate[x] = la.span(H, M.dims[x], p)
            if len(incoming) != len(q.incoming(x)) and not is_closed(M, candidate):
                continue
            out.append(tuple(candidate))
    return out


# ── Extensions ───────────────────────────────────────────

def ext_cocycles(Z: Rep, Y: Rep) -> list[np.ndarray]:
    """Cocycles (g_a: Z_s → Y_t) whose classes form a basis of Ext¹(Z, Y)."""
    _check_compatible(Z, Y)
    q, p = Z.quiver, Z.p
    offsets, off = [], 0
    for v in range(q.vertex_count):
        offsets.append(off)
        off += Y.dims[v] * Z.dims[v]
    nvars = off
    out_offsets, n_out = [], 0
    for s, t in q.arrows:
        out_offsets.append(n_out)
        n_out += Y.dims[t] * Z.dims[s]
    D = np.zeros((n_out, nvars), dtype=np.int64)
    for a, (s, t) in enumerate(q.arrows):
        h = Y.dims[t] * Z.dims[s]
        if not h:
            continue
        r = out_offsets[a]
        ft = np.kron(la.identity(Y.dims[t]), Z.maps[a].T)
        fs = np.kron(Y.maps[a], la.identity(Z.dims[s]))
        D[r:r + h, offsets[t]:offsets[t] + ft.shape[1]] += ft
        D[r:r + h, offsets[s]:offsets[s] + fs.shape[1]] -= fs
    image = la.span(np.mod(D, p).T, n_out, p)
    pivots = set(image.pivots)
    out = []
    for j in range(n_out):
        if j not in pivots:
            g = np.zeros(n_out, dtype=np.int64)
            g[j] = 1
            out.append(g)
    return out


def extension(Z: Rep, Y: Rep, cocycle: np.ndarray) -> Rep:
    """Middle term E of 0 → Y → E → Z → 0 for the given cocycle; Y sits first."""
    q = Z.quiver
    maps, r = [], 0
    for a, (s, t) in enumerate(q.arrows):
        h = Y.dims[t] * Z.dims[s]
        g = cocycle[r:r + h].reshape(Y.dims[t], Z.dims[s])
        r += h
        m = la.zeros(Y.dims[t] + Z.dims[t], Y.dims[s] + Z.dims[s])
        m[: Y.dims[t], : Y.dims[s]] = Y.maps[a]
        m[: Y.dims[t], Y.dims[s]:] = g
        m[Y.dims[t]:, Y.dims[s]:] = Z.maps[a]
        maps.append(m)
    dims = tuple(y + z for y, z in zip(Y.dims, Z.dims))
    return Rep(quiver=q, p=Z.p, dims=dims, maps=tuple(maps))
