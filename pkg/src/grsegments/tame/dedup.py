"""Isomorphism-class deduplication for representations.

Cheap basis-independent invariants bucket the candidates; exact
are_isomorphic decides inside a bucket.
"""

from __future__ import annotations

from rich.console import Console

from grsegments.algebra import linalg as la
from grsegments.algebra.rep import Rep, are_isomorphic, hom_basis, sort_canonical
from grsegments.config import DEFAULT_BUDGETS, Budgets

console = Console(stderr=True)


def fingerprint(M: Rep) -> tuple:
    """dims, dim End and the rank of every arrow map."""
    ranks = tuple(la.rank(m, M.p) for m in M.maps)
    return (M.dims, hom_basis(M, M).dim, ranks)


def find_isoclass_clusters(
    reps: list[Rep],
    fingerprints: list[tuple] | None = None,
    budgets: Budgets = DEFAULT_BUDGETS,
) -> list[list[int]]:
    """
    Group indices of pairwise isomorphic representations.
    Only clusters with at least two members are returned.
    """
    if fingerprints is None:
        fingerprints = [fingerprint(M) for M in reps]

    n = len(reps)
    visited: set[int] = set()
    clusters: list[list[int]] = []

    for i in range(n):
        if i in visited:
            continue
        same = [
            j for j in range(i + 1, n)
            if j not in visited
            and fingerprints[j] == fingerprints[i]
            and are_isomorphic(reps[i], reps[j], budgets)
        ]
        if same:
            cluster = [i] + same
            visited.update(cluster)
            clusters.append(cluster)

    return clusters


def canonical_member(cluster: list[Rep]) -> Rep:
    """The member with the smallest canonical sort key."""
    return min(cluster, key=Rep.sort_key)


def dedup_reps(
    reps: list[Rep],
    budgets: Budgets = DEFAULT_BUDGETS,
    what: str = "modules",
) -> list[Rep]:
    """One canonical representative per isomorphism class, canonically sorted."""
    if len(reps) < 2:
        return sort_canonical(reps)

    console.print(f"[dim]Deduplicating {len(reps)} {what}...[/]")
    clusters = find_isoclass_clusters(reps, budgets=budgets)

    in_cluster = {i for c in clusters for i in c}
    result = [M for i, M in enumerate(reps) if i not in in_cluster]
    result += [canonical_member([reps[i] for i in c]) for c in clusters]

    if clusters:
        console.print(f"[dim]After dedup: {len(result)} {what} (removed {len(reps) - len(result)})[/]")
    return sort_canonical(result)
