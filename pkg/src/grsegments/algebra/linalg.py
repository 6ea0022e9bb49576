"""Exact linear algebra over prime fields F_p.

Matrices are numpy int64 arrays with entries in [0, p); zero-sized shapes are
legal everywhere. Elimination and inversion go through galois GF(p) arrays.
Subspaces are kept as RREF bases, which makes equal subspaces byte-identical.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache, cached_property

import galois
import numpy as np

from grsegments.errors import BudgetExceeded, InvalidInput

Matrix = np.ndarray


@cache
def field(p: int) -> type[galois.FieldArray]:
    return galois.GF(p)


def as_matrix(rows, p: int, cols: int | None = None) -> Matrix:
    """Coerce nested lists / arrays into a reduced int64 matrix."""
    A = np.asarray(rows, dtype=np.int64)
    if A.size == 0:
        ncols = cols if cols is not None else (A.shape[1] if A.ndim == 2 else 0)
        nrows = A.shape[0] if A.ndim >= 1 else 0
        return np.zeros((nrows, ncols), dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1)
    return np.mod(A, p)


def zeros(rows: int, cols: int) -> Matrix:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> Matrix:
    return np.eye(n, dtype=np.int64)


def mul(A: Matrix, B: Matrix, p: int) -> Matrix:
    return np.mod(A @ B, p)


# ── Elimination ──────────────────────────────────────────

def rref(A: Matrix, p: int) -> tuple[Matrix, int]:
    """Reduced row echelon form and rank. Deterministic, shape-preserving."""
    A = np.mod(np.asarray(A, dtype=np.int64), p)
    if A.shape[0] == 0 or A.shape[1] == 0:
        return A.copy(), 0
    GF = field(p)
    R = GF(A).row_reduce().view(np.ndarray).astype(np.int64)
    rank = int(np.count_nonzero(R.any(axis=1)))
    return R, rank


def rank(A: Matrix, p: int) -> int:
    return rref(A, p)[1]


def pivot_columns(R: Matrix) -> list[int]:
    """Leading columns of the nonzero rows of an RREF matrix."""
    pivots = []
    for row in R:
        nz = np.flatnonzero(row)
        if nz.size == 0:
            break
        pivots.append(int(nz[0]))
    return pivots


def nullspace_basis(A: Matrix, p: int) -> Matrix:
    """Basis of {x : A x = 0} as rows, in RREF."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    R, r = rref(A, p)
    pivots = pivot_columns(R[:r])
    free = [j for j in range(n) if j not in set(pivots)]
    N = zeros(len(free), n)
    for k, f in enumerate(free):
        N[k, f] = 1
        for i, c in enumerate(pivots):
            N[k, c] = (-R[i, f]) % p
    R_N, rN = rref(N, p)
    return R_N[:rN]


def solve(A: Matrix, b, p: int) -> np.ndarray | None:
    """A particular solution of A x = b (free variables zero), or None."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    if A.ndim != 2 or A.shape[0] != b.shape[0]:
        raise InvalidInput(f"shape mismatch: A {A.shape}, b {b.shape}")
    m, n = A.shape
    aug = np.concatenate([A, b.reshape(m, 1)], axis=1) if m else zeros(0, n + 1)
    R, r = rref(aug, p)
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(pivot_columns(R[:r])):
        if c == n:
            return None
        x[c] = R[i, n]
    return x


def is_invertible(A: Matrix, p: int) -> bool:
    return A.shape[0] == A.shape[1] and rank(A, p) == A.shape[0]


def inverse(A: Matrix, p: int) -> Matrix:
    if not is_invertible(A, p):
        raise InvalidInput("matrix is not invertible")
    if A.shape[0] == 0:
        return A.copy()
    GF = field(p)
    return np.linalg.inv(GF(np.mod(A, p))).view(np.ndarray).astype(np.int64)


def random_invertible(n: int, p: int, rng: np.random.Generator) -> Matrix:
    while True:
        A = rng.integers(0, p, size=(n, n), dtype=np.int64)
        if is_invertible(A, p):
            return A


def enumerate_vectors(n: int, p: int, budget: int) -> Matrix:
    """All p**n vectors of F_p^n as rows, zero vector first."""
    if p**n > budget:
        raise BudgetExceeded(f"vectors of F_{p}^{n}", p**n, budget)
    if n == 0:
        return zeros(1, 0)
    return np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64)


def coefficient_rows(d: int, p: int, budget: int) -> Matrix:
    """All coefficient vectors for linear combinations of d basis elements."""
    return enumerate_vectors(d, p, budget)


# ── Subspaces ────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class Subspace:
    ambient_dim: int
    basis: Matrix                    # RREF, no zero rows
    p: int

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @cached_property
    def pivots(self) -> list[int]:
        return pivot_columns(self.basis)

    @cached_property
    def key(self) -> bytes:
        head = np.array([self.p, self.ambient_dim, self.dim], dtype=np.int64)
        return head.tobytes() + self.basis.astype(np.int64).tobytes()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subspace) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Subspace(n={self.ambient_dim}, basis={self.basis.tolist()})"


def span(rows, n: int, p: int) -> Subspace:
    A = as_matrix(rows, p, cols=n)
    if A.shape[1] != n:
        raise InvalidInput(f"vectors of width {A.shape[1]} in ambient dimension {n}")
    R, r = rref(A, p)
    return Subspace(ambient_dim=n, basis=R[:r].copy(), p=p)


def zero_subspace(n: int, p: int) -> Subspace:
    return Subspace(ambient_dim=n, basis=zeros(0, n), p=p)


def full_subspace(n: int, p: int) -> Subspace:
    return Subspace(ambient_dim=n, basis=identity(n), p=p)


def _check_same_ambient(U: Subspace, V: Subspace) -> None:
    if U.ambient_dim != V.ambient_dim or U.p != V.p:
        raise InvalidInput(f"ambient mismatch: F_{U.p}^{U.ambient_dim} vs F_{V.p}^{V.ambient_dim}")


def subspace_sum(U: Subspace, V: Subspace) -> Subspace:
    _check_same_ambient(U, V)
    return span(np.concatenate([U.basis, V.basis], axis=0), U.ambient_dim, U.p)


def annihilator(U: Subspace) -> Subspace:
    """Vectors w with u·w = 0 for all u in U."""
    N = nullspace_basis(U.basis, U.p) if U.dim else identity(U.ambient_dim)
    return Subspace(ambient_dim=U.ambient_dim, basis=N, p=U.p)


def subspace_intersect(U: Subspace, V: Subspace) -> Subspace:
    _check_same_ambient(U, V)
    stacked = np.concatenate([annihilator(U).basis, annihilator(V).basis], axis=0)
    if stacked.shape[0] == 0:
        return full_subspace(U.ambient_dim, U.p)
    return Subspace(ambient_dim=U.ambient_dim, basis=nullspace_basis(stacked, U.p), p=U.p)


def subspace_contains(U: Subspace, V: Subspace) -> bool:
    """True iff V is a subspace of U."""
    _check_same_ambient(U, V)
    if V.dim == 0:
        return True
    return rank(np.concatenate([U.basis, V.basis], axis=0), U.p) == U.dim


def vectors_in(U: Subspace, vectors: Matrix) -> bool:
    """True iff every row of `vectors` lies in U."""
    if vectors.shape[0] == 0:
        return True
    return bool(np.array_equal(reduce_modulo(U, vectors, full=True), np.zeros_like(vectors)))


def coordinates(U: Subspace, vectors: Matrix) -> Matrix:
    """Coordinates of vectors lying in U with respect to U's RREF basis."""
    return vectors[:, U.pivots].copy()


def reduce_modulo(U: Subspace, vectors: Matrix, full: bool = False) -> Matrix:
    """Residues of vectors modulo U.

    With full=False only the non-pivot coordinates are returned: the standard
    vectors at non-pivot columns form a complement of U, so these are the
    coordinates of the image in the quotient F_p^n / U.
    """
    vectors = np.asarray(vectors, dtype=np.int64)
    if vectors.ndim == 1:
        vectors = vectors.reshape(1, U.ambient_dim)
    if U.dim:
        residue = np.mod(vectors - coordinates(U, vectors) @ U.basis, U.p)
    else:
        residue = np.mod(vectors, U.p)
    if full:
        return residue
    nonpivots = [j for j in range(U.ambient_dim) if j not in set(U.pivots)]
    return residue[:, nonpivots]


def enumerate_subspaces(n: int, p: int, budget: int = 2**16) -> list[Subspace]:
    """Every subspace of F_p^n in canonical form, ordered by dimension then pivots."""
    if p**n > budget:
        raise BudgetExceeded(f"subspaces of F_{p}^{n}", p**n, budget)
    out: list[Subspace] = []
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            pivot_set = set(pivots)
            free = [(i, j) for i, c in enumerate(pivots) for j in range(c + 1, n) if j not in pivot_set]
            for values in itertools.product(range(p), repeat=len(free)):
                B = zeros(k, n)
                for i, c in enumerate(pivots):
                    B[i, c] = 1
                for (i, j), v in zip(free, values):
                    B[i, j] = v
                out.append(Subspace(ambient_dim=n, basis=B, p=p))
    return out


def gaussian_binomial_total(n: int, p: int) -> int:
    """Number of subspaces of F_p^n."""
    total = 0
    for k in range(n + 1):
        num, den = 1, 1
        for i in range(k):
            num *= p ** (n - i) - 1
            den *= p ** (i + 1) - 1
        total += num // den
    return total
