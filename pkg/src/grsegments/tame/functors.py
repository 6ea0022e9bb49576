"""BGP reflection functors, Coxeter functors and the AR translate.

σ⁺ at a sink v replaces M_v by the kernel of ⊕ M_s → M_v over the arrows
entering v; σ⁻ at a source replaces it by the cokernel of M_v → ⊕ M_t.
Arrow indices are kept, so the reflected quiver is Quiver.reflected(v).
"""

from __future__ import annotations

from typing import Literal

import numpy as np

from grsegments.algebra import linalg as la
from grsegments.algebra.rep import Rep, is_indecomposable
from grsegments.config import DEFAULT_BUDGETS, Budgets
from grsegments.errors import InvalidInput
from grsegments.tame.euler import vertex_order

Direction = Literal["tau", "tau_inverse"]


def _reflect_at_sink(M: Rep, v: int) -> Rep:
    q, p = M.quiver, M.p
    entering = q.incoming(v)
    widths = [M.dims[q.arrows[a][0]] for a in entering]
    offsets = np.cumsum([0] + widths)
    h = np.concatenate([M.maps[a] for a in entering], axis=1) if entering else la.zeros(M.dims[v], 0)
    K = la.nullspace_basis(h, p) if h.shape[1] else la.zeros(0, 0)
    dims = list(M.dims)
    dims[v] = K.shape[0]
    maps = list(M.maps)
    for i, a in enumerate(entering):
        # reversed arrow v → s: the kernel vector's component at s
        maps[a] = K[:, offsets[i]:offsets[i + 1]].T.copy()
    return Rep(quiver=q.reflected(v), p=p, dims=tuple(dims), maps=tuple(maps))


def _reflect_at_source(M: Rep, v: int) -> Rep:
    q, p = M.quiver, M.p
    leaving = q.outgoing(v)
    heights = [M.dims[q.arrows[a][1]] for a in leaving]
    offsets = np.cumsum([0] + heights)
    total = int(offsets[-1])
    psi = np.concatenate([M.maps[a] for a in leaving], axis=0) if leaving else la.zeros(0, M.dims[v])
    image = la.span(psi.T, total, p)
    dims = list(M.dims)
    dims[v] = total - image.dim
    maps = list(M.maps)
    for i, a in enumerate(leaving):
        inclusion = la.zeros(heights[i], total)
        inclusion[:, offsets[i]:offsets[i + 1]] = la.identity(heights[i])
        maps[a] = la.reduce_modulo(image, inclusion).T.copy()
    return Rep(quiver=q.reflected(v), p=p, dims=tuple(dims), maps=tuple(maps))


def reflect(M: Rep, v: int) -> Rep:
    """σ⁺ if v is a sink of M's quiver, σ⁻ if it is a source."""
    q = M.quiver
    if not 0 <= v < q.vertex_count:
        raise InvalidInput(f"vertex {v} out of range")
    if q.is_sink(v):
        return _reflect_at_sink(M, v)
    if q.is_source(v):
        return _reflect_at_source(M, v)
    raise InvalidInput(f"vertex {v} is neither a sink nor a source of {q.name!r}")


def coxeter_plus(M: Rep) -> Rep:
    """C⁺ = σ⁺_{vₙ} ⋯ σ⁺_{v₁}; kills projectives, τ on everything else."""
    original = M.quiver
    for v in vertex_order(original):
        M = reflect(M, v)
    return M.with_quiver(original)


def coxeter_minus(M: Rep) -> Rep:
    """C⁻ = σ⁻_{v₁} ⋯ σ⁻_{vₙ}; kills injectives, τ⁻ on everything else."""
    original = M.quiver
    for v in reversed(vertex_order(original)):
        M = reflect(M, v)
    return M.with_quiver(original)


def ar_translate(
    M: Rep,
    direction: Direction = "tau",
    budgets: Budgets = DEFAULT_BUDGETS,
    check: bool = True,
) -> Rep | None:
    """τM or τ⁻M for indecomposable M; None for projectives (τ) or injectives (τ⁻)."""
    if check and (M.length == 0 or not is_indecomposable(M, budgets)):
        raise InvalidInput("the AR translate is computed for indecomposable modules only")
    if direction == "tau":
        out = coxeter_plus(M)
    elif direction == "tau_inverse":
        out = coxeter_minus(M)
    else:
        raise InvalidInput(f"unknown direction {direction!r}")
    return out if out.length else None


def tau_power(M: Rep, k: int, budgets: Budgets = DEFAULT_BUDGETS) -> Rep | None:
    """τᵏM for k ≥ 0, τ⁻ᵏ for k < 0; None once the orbit leaves the category."""
    direction: Direction = "tau" if k >= 0 else "tau_inverse"
    out: Rep | None = M
    for _ in range(abs(k)):
        out = ar_translate(out, direction, budgets, check=False)
        if out is None:
            return None
    return out
