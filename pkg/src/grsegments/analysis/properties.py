"""Property suites run by `grseg verify`.

Each suite returns a SuiteResult naming the statement it checks, the number
of instances checked and a readable line per failure. Catalog-level suites
are relative to the catalog: they only look at modules of length ≤ L.

order_laws, prefix_and_top_laws:   measure order
linalg_invariants, rep_invariants: exact algebra on random input
oracle_equivalence:                frontier recursion against brute force
regular_gr_submodules, low_tubes_below_homogeneous, preprojectives_take_off,
stable_tails_fix_rank, stable_gr_submodule_unique,
preinjectives_above_regular_submodules, stable_fibers_regular:
                                   regular modules and their measures
nearest_regular_predecessor, successors_keep_prefix, z_segment_shape,
tail_shape:                        segment shape
catalog_invariants:                Coxeter, defect, tube and b-table checks
"""

from __future__ import annotations

import numpy as np
from rich.console import Console

from grsegments.algebra import linalg as la
from grsegments.algebra.gr import brute_force_measure, gr_submodules
from grsegments.algebra.rep import (
    Quiver,
    Rep,
    are_isomorphic,
    hom_basis,
    is_indecomposable,
)
from grsegments.analysis.segments import (
    SegmentAnalysis,
    compute_b,
    h1_measure,
    homogeneous_measures,
    quasi_simple_chains,
    stable_chains,
)
from grsegments.config import DEFAULT_BUDGETS, Budgets
from grsegments.errors import BudgetExceeded
from grsegments.measure import GrMeasure, Ordering, compare, extend, starts_with, top
from grsegments.models import CatalogEntry, MeasureRecord, SuiteResult, VerifyReport
from grsegments.tame.catalog import Catalog
from grsegments.tame.dedup import find_isoclass_clusters
from grsegments.tame.euler import defect, euler_data
from grsegments.tame.functors import ar_translate

console = Console(stderr=True)

_MAX_FAILURES = 20


def _fail(result: SuiteResult, message: str) -> None:
    if len(result.failures) < _MAX_FAILURES:
        result.failures.append(message)


def _random_measure(rng: np.random.Generator, universe: int = 12) -> GrMeasure:
    size = int(rng.integers(1, universe + 1))
    picks = rng.choice(np.arange(1, universe + 1), size=size, replace=False)
    return GrMeasure(elements=tuple(sorted(int(x) for x in picks)))


def random_rep(Q: Quiver, p: int, dims: tuple[int, ...], rng: np.random.Generator) -> Rep:
    maps = [rng.integers(0, p, size=(dims[t], dims[s]), dtype=np.int64) for s, t in Q.arrows]
    return Rep(quiver=Q, p=p, dims=dims, maps=tuple(maps))


# ── Measure order ────────────────────────────────────────

def order_laws(rng: np.random.Generator, samples: int = 10**5) -> SuiteResult:
    """Antisymmetry, transitivity, starts_with ⇒ ≤, extend is increasing."""
    result = SuiteResult(name="order laws")
    for _ in range(samples):
        I, J, K = (_random_measure(rng) for _ in range(3))
        result.checked += 1
        ij, ji = compare(I, J), compare(J, I)
        if ij.value != -ji.value or (ij is Ordering.EQUAL) != (I == J):
            _fail(result, f"antisymmetry: {I} vs {J}")
        if I < J and J < K and not I < K:
            _fail(result, f"transitivity: {I} < {J} < {K}")
        if starts_with(J, I) and not I <= J:
            _fail(result, f"starts_with: {J} starts with {I} but is smaller")
        if not I < extend(I, top(I) + 1 + int(rng.integers(0, 5))):
            _fail(result, f"extend: {I}")
    return result


def prefix_and_top_laws(rng: np.random.Generator, samples: int = 10**4, universe: int = 12) -> SuiteResult:
    """For I < I' < J: J starts with I ⇒ I' starts with I; J = I ∪ {top J} ⇒ top I' > top J."""
    result = SuiteResult(name="prefix and top laws")
    ordered = sorted(
        GrMeasure(elements=tuple(i + 1 for i in range(universe) if mask >> i & 1))
        for mask in range(1, 2**universe)
    )
    n = len(ordered)
    for _ in range(samples):
        a = int(rng.integers(0, n - 2))
        c = int(rng.integers(a + 2, n))
        b = int(rng.integers(a + 1, c))
        I, Ip, J = ordered[a], ordered[b], ordered[c]
        result.checked += 1
        if starts_with(J, I) and not starts_with(Ip, I):
            _fail(result, f"(1): {I} < {Ip} < {J}")
        if J.elements == I.elements + (top(J),) and not top(Ip) > top(J):
            _fail(result, f"(2): {I} < {Ip} < {J}")
    return result


# ── Exact algebra ────────────────────────────────────────

def linalg_invariants(rng: np.random.Generator, trials: int = 200) -> SuiteResult:
    result = SuiteResult(name="linalg invariants")
    for _ in range(trials):
        p = int(rng.choice([2, 3, 5]))
        n = int(rng.integers(1, 5))
        A = rng.integers(0, p, size=(int(rng.integers(1, 5)), n), dtype=np.int64)
        B = rng.integers(0, p, size=(int(rng.integers(1, 5)), n), dtype=np.int64)
        result.checked += 1

        R, r = la.rref(A, p)
        if not np.array_equal(la.rref(R, p)[0], R):
            _fail(result, f"rref not idempotent over F_{p}: {A.tolist()}")
        if r != la.rank(A.T, p):
            _fail(result, f"row rank {r} != column rank over F_{p}: {A.tolist()}")

        U, V = la.span(A, n, p), la.span(B, n, p)
        if la.subspace_sum(U, V).dim + la.subspace_intersect(U, V).dim != U.dim + V.dim:
            _fail(result, f"modular law over F_{p}: {A.tolist()} / {B.tolist()}")

        if p**n <= 2**12:
            def elements(M: np.ndarray) -> set[tuple[int, ...]]:
                coeffs = la.coefficient_rows(M.shape[0], p, 2**12)
                return {tuple(row) for row in la.mul(coeffs, M, p).tolist()}

            if (U == V) != (elements(A) == elements(B)):
                _fail(result, f"canonical equality disagrees with set equality over F_{p}")
    return result


def rep_invariants(Q: Quiver, p: int, rng: np.random.Generator, trials: int = 30,
                   budgets: Budgets = DEFAULT_BUDGETS) -> SuiteResult:
    """Base change preserves isoclass and Hom dimensions; sums decompose; simples are indecomposable."""
    result = SuiteResult(name="rep invariants")
    for v in range(Q.vertex_count):
        result.checked += 1
        if not is_indecomposable(Rep.simple(Q, p, v), budgets):
            _fail(result, f"S({v}) reported decomposable")
    for _ in range(trials):
        dims = tuple(int(x) for x in rng.integers(0, 3, size=Q.vertex_count))
        if sum(dims) == 0:
            continue
        M = random_rep(Q, p, dims, rng)
        gs = [la.random_invertible(d, p, rng) if d else la.identity(0) for d in dims]
        N = M.change_basis(gs)
        result.checked += 1
        try:
            if not are_isomorphic(M, N, budgets):
                _fail(result, f"base change broke isomorphism: {M!r}")
            if hom_basis(M, M).dim != hom_basis(N, N).dim:
                _fail(result, f"dim End changed under base change: {M!r}")
            S = M.direct_sum(Rep.simple(Q, p, 0))
            if is_indecomposable(S, budgets):
                _fail(result, f"direct sum reported indecomposable: {M!r}")
        except BudgetExceeded as e:
            console.print(f"[dim]rep invariants: skipped {dims} ({e.what})[/]")
    return result


def oracle_equivalence(C: Catalog, max_length: int = 6, budgets: Budgets = DEFAULT_BUDGETS) -> SuiteResult:
    result = SuiteResult(name="oracle equivalence")
    for e in C.entries:
        if e.length > max_length:
            continue
        try:
            mu = brute_force_measure(C.rep(e), budgets)
        except BudgetExceeded as exc:
            console.print(f"[dim]oracle: skipped {e.entry_id} ({exc.what})[/]")
            continue
        result.checked += 1
        if mu != e.measure:
            _fail(result, f"{e.entry_id} {e.label}: recursion {e.measure}, brute force {mu}")
    return result


# ── Regular modules ──────────────────────────────────────

def regular_gr_submodules(C: Catalog, budgets: Budgets = DEFAULT_BUDGETS) -> SuiteResult:
    """A GR submodule of X_i is preprojective or ≅ X_{i-1}."""
    result = SuiteResult(name="GR submodules of regular modules")
    ed = euler_data(C.quiver)
    for key, chain in quasi_simple_chains(C).items():
        for i in sorted(chain):
            X = C.rep(chain[i])
            if X.length == 1:
                continue
            prev = C.rep(chain[i - 1]) if i - 1 in chain else None
            for T in gr_submodules(X, budgets):
                result.checked += 1
                if defect(ed, T.dims) < 0:
                    continue
                if prev is not None and are_isomorphic(T, prev, budgets):
                    continue
                _fail(result, f"{chain[i].label}: GR submodule {T.dims} is neither preprojective nor X_{i - 1}")
    return result


def low_tubes_below_homogeneous(C: Catalog) -> SuiteResult:
    """μ(X_R) < μ(H₁) forces μ(X_i) < μ(H_j) for every i, j."""
    result = SuiteResult(name="low tubes stay below the homogeneous chain")
    hm = homogeneous_measures(C)
    if not hm:
        return result
    low = min(hm)
    for key, chain in quasi_simple_chains(C).items():
        R = next(iter(chain.values())).tube.rank
        if R not in chain or chain[R].measure >= hm[0]:
            continue
        for _, e in sorted(chain.items()):
            result.checked += 1
            if not e.measure < low:
                _fail(result, f"{e.label}: {e.measure} is not below every μ(H_j)")
    return result


def preprojectives_take_off(C: Catalog, records: list[MeasureRecord]) -> SuiteResult:
    """Preprojective measures lie below μ(H₁) and are labelled take-off."""
    result = SuiteResult(name="preprojectives are take-off")
    h1 = h1_measure(C)
    for r in records:
        if "preprojective" not in r.positions_present:
            continue
        result.checked += 1
        if r.partition != "take_off":
            _fail(result, f"{r.measure} holds a preprojective but is labelled {r.partition}")
        if h1 is not None and not r.measure < h1:
            _fail(result, f"{r.measure} holds a preprojective but is not below μ(H₁)={h1}")
    return result


def stable_tails_fix_rank(C: Catalog) -> SuiteResult:
    """For stable X and any other chain Y: μ(X_i) = μ(Y_j) with i ≥ 2r forces equal ranks and equal tails."""
    result = SuiteResult(name="stable tails determine the tube rank")
    everything = quasi_simple_chains(C)
    for kx, X in stable_chains(C, exceptional_only=False).items():
        r = next(iter(X.values())).tube.rank
        for ky, Y in everything.items():
            if ky == kx:
                continue
            s = next(iter(Y.values())).tube.rank
            meet = [
                (i, j) for i in X if i >= 2 * r
                for j in Y if X[i].measure == Y[j].measure
            ]
            if not meet:
                continue
            result.checked += 1
            if r != s:
                _fail(result, f"{X[meet[0][0]].label} and {Y[meet[0][1]].label} share a measure, ranks {r} != {s}")
                continue
            for t in range(r, max(max(X), max(Y)) + 1):
                if t in X and t in Y and X[t].measure != Y[t].measure:
                    _fail(result, f"tails differ at quasi-length {t}: {X[t].label} vs {Y[t].label}")
    return result


def stable_gr_submodule_unique(C: Catalog, budgets: Budgets = DEFAULT_BUDGETS) -> SuiteResult:
    """For stable X: X_{i-1} is the only GR submodule of X_i (i ≥ R), and μ(X_i) > μ(H_j) once R > 1 and i > R."""
    result = SuiteResult(name="stable chains have a unique GR submodule")
    hm = homogeneous_measures(C)
    for key, chain in stable_chains(C, exceptional_only=False).items():
        R = next(iter(chain.values())).tube.rank
        for i in sorted(chain):
            if i < max(R, 2) or i - 1 not in chain:
                continue
            prev = C.rep(chain[i - 1])
            for T in gr_submodules(C.rep(chain[i]), budgets):
                result.checked += 1
                if not are_isomorphic(T, prev, budgets):
                    _fail(result, f"{chain[i].label}: GR submodule {T.dims} is not X_{i - 1}")
            if R > 1 and i > R and hm and not chain[i].measure > max(hm):
                _fail(result, f"{chain[i].label}: {chain[i].measure} does not exceed every μ(H_j)")
    return result


def _regular_chain_of(C: Catalog, T: Rep, budgets: Budgets) -> dict[int, CatalogEntry] | None:
    for e in C.by_position("regular"):
        if e.dims == T.dims and are_isomorphic(C.rep(e), T, budgets):
            return C.chain(e.tube.tube_id, e.tube.quasi_socle)
    return None


def preinjectives_above_regular_submodules(
    C: Catalog, records: list[MeasureRecord], budgets: Budgets = DEFAULT_BUDGETS,
) -> SuiteResult:
    """A preinjective M outside take-off (landing, or above μ(H₁)) with a GR submodule X_i has μ(M) > μ(X_j) for every j."""
    result = SuiteResult(name="preinjectives above their regular GR submodules")
    ed = euler_data(C.quiver)
    h1 = h1_measure(C)
    labels = {r.measure.elements: r.partition for r in records}
    for e in C.by_position("preinjective"):
        # anything above μ(H₁) is outside take-off whatever its window label
        if labels.get(e.measure.elements) != "landing" and (h1 is None or not e.measure > h1):
            continue
        for T in gr_submodules(C.rep(e), budgets):
            if defect(ed, T.dims) != 0:
                continue
            chain = _regular_chain_of(C, T, budgets)
            if chain is None:
                continue
            result.checked += 1
            for j, X in sorted(chain.items()):
                if not e.measure > X.measure:
                    _fail(result, f"{e.label}: {e.measure} not above {X.label} {X.measure}")
    return result


def stable_fibers_regular(C: Catalog, records: list[MeasureRecord]) -> SuiteResult:
    """μ(M) = μ(X_i) with i ≥ 2r forces M regular."""
    result = SuiteResult(name="stable measures have regular fibers")
    fibers = {r.measure.elements: r for r in records}
    for key, chain in stable_chains(C, exceptional_only=False).items():
        r = next(iter(chain.values())).tube.rank
        for i, e in sorted(chain.items()):
            if i < 2 * r:
                continue
            result.checked += 1
            rec = fibers[e.measure.elements]
            if rec.positions_present != ["regular"]:
                _fail(result, f"{e.label}: fiber of {e.measure} holds {rec.positions_present}")
    return result


# ── Segment shape ────────────────────────────────────────

def _tube_members(C: Catalog, rec: MeasureRecord) -> list[tuple[int, int, int]]:
    out = []
    for i in rec.modules:
        e = C.entry(i)
        if e.tube is not None:
            out.append((e.tube.tube_id, e.tube.quasi_socle, e.tube.quasi_length))
    return out


def nearest_regular_predecessor(C: Catalog, records: list[MeasureRecord]) -> SuiteResult:
    """Walking down from μ(X_s), the first regular-bearing measure is μ(X_{s-1}), or none when s = 1."""
    result = SuiteResult(name="nearest regular predecessor")
    for idx, rec in enumerate(records):
        if rec.partition != "central":
            continue
        below = None
        for j in range(idx - 1, -1, -1):
            if records[j].partition != "central":
                break
            if "regular" in records[j].positions_present:
                below = records[j]
                break
        for t, k, s in _tube_members(C, rec):
            result.checked += 1
            chain = C.chain(t, k)
            if s == 1:
                if below is not None:
                    _fail(result, f"{chain[1].label}: regular measure {below.measure} found below a quasi-simple")
            elif below is not None and s - 1 in chain and below.measure != chain[s - 1].measure:
                _fail(result, f"{chain[s].label}: nearest regular predecessor {below.measure}, "
                              f"expected μ(X_{s - 1})={chain[s - 1].measure}")
    return result


def successors_keep_prefix(records: list[MeasureRecord]) -> SuiteResult:
    """Central successors that never get shorter all start with the first measure."""
    result = SuiteResult(name="starts_with along successors")
    for idx, rec in enumerate(records):
        if rec.partition != "central":
            continue
        mu0 = rec.measure
        for nxt in records[idx + 1:]:
            if nxt.partition != "central" or top(nxt.measure) < top(mu0):
                break
            result.checked += 1
            if not starts_with(nxt.measure, mu0):
                _fail(result, f"{nxt.measure} follows {mu0} but does not start with it")
    return result


def z_segment_shape(C: Catalog, analysis: SegmentAnalysis) -> SuiteResult:
    """Z segments sit above μ(H₁) with a preinjective-only low end."""
    result = SuiteResult(name="shape of Z segments")
    h1 = h1_measure(C)
    fibers = {r.measure.elements: r for r in analysis.records}
    for seg in analysis.segments:
        if seg.index_type != "Z":
            continue
        result.checked += 1
        low = fibers[seg.measures[0].elements]
        if low.positions_present != ["preinjective"]:
            _fail(result, f"{seg.segment_id}: lowest fiber {low.measure} holds {low.positions_present}")
        if h1 is not None and not all(m > h1 for m in seg.measures):
            _fail(result, f"{seg.segment_id}: a member lies at or below μ(H₁)={h1}")
    return result


def tail_shape(C: Catalog, analysis: SegmentAnalysis) -> SuiteResult:
    """Central typed segments end in regular-only fibers carried by one X_i chain."""
    result = SuiteResult(name="tails of central segments")
    fibers = {r.measure.elements: r for r in analysis.records}
    for seg in analysis.segments:
        if not seg.central or seg.index_type == "Unknown":
            continue
        result.checked += 1
        last = fibers[seg.measures[-1].elements]
        if last.positions_present != ["regular"]:
            _fail(result, f"{seg.segment_id}: top fiber {last.measure} holds {last.positions_present}")
            continue
        if len(seg.measures) < 2:
            continue
        before = fibers[seg.measures[-2].elements]
        upper = {(t, k, s) for t, k, s in _tube_members(C, last)}
        lower = {(t, k, s) for t, k, s in _tube_members(C, before)}
        if not any((t, k, s - 1) in lower for t, k, s in upper):
            _fail(result, f"{seg.segment_id}: last two members are not consecutive X_i of one chain")
    return result


# ── Catalog ──────────────────────────────────────────────

def catalog_invariants(C: Catalog, budgets: Budgets = DEFAULT_BUDGETS) -> SuiteResult:
    result = SuiteResult(name="catalog invariants")
    ed = euler_data(C.quiver)
    n = C.quiver.vertex_count
    injective_dims = {ed.injective_dims(v) for v in range(n)}
    expected_sign = {"preprojective": -1, "regular": 0, "preinjective": 1}

    for e in C.entries:
        result.checked += 1
        M = C.rep(e)
        if not is_indecomposable(M, budgets):
            _fail(result, f"{e.entry_id} {e.label} is decomposable")
        if int(np.sign(e.defect)) != expected_sign[e.position]:
            _fail(result, f"{e.entry_id} {e.label}: defect {e.defect} for a {e.position} module")
        T = ar_translate(M, "tau_inverse", budgets, check=False)
        if T is None:
            if e.dims not in injective_dims:
                _fail(result, f"{e.entry_id} {e.label}: τ⁻ vanished on a non-injective")
        else:
            predicted = tuple(int(x) for x in ed.tau_inverse(e.dims))
            if T.dims != predicted or tuple(int(x) for x in ed.tau(T.dims)) != e.dims:
                _fail(result, f"{e.entry_id} {e.label}: dim τ⁻M={T.dims}, Coxeter predicts {predicted}")

    delta = tuple(int(x) for x in ed.delta)
    for t, members in C.tube_entries().items():
        quasi = [e for e in members if e.tube.quasi_length == 1]
        R = members[0].tube.rank
        if len(quasi) < R:
            continue
        result.checked += 1
        total = tuple(int(x) for x in np.sum([e.dims for e in quasi], axis=0))
        if total != delta:
            _fail(result, f"tube {t}: quasi-simples sum to {total}, not δ={delta}")

    if all(len(C.chain(t, k)) for t, ms in C.tube_entries().items() for k in range(ms[0].tube.rank)):
        result.checked += 1
        b = compute_b(C)
        if b != ed.quiver_type.expected_b:
            _fail(result, f"b={b} but type {ed.quiver_type} has {ed.quiver_type.expected_b}")

    result.checked += 1
    reps = [C.rep(e) for e in C.entries]
    for cluster in find_isoclass_clusters(reps, budgets=budgets):
        _fail(result, "isomorphic entries: " + ", ".join(C.entries[i].entry_id for i in cluster))
    return result


# ── Driver ───────────────────────────────────────────────

def run_all(
    C: Catalog,
    analysis: SegmentAnalysis,
    seed: int,
    budgets: Budgets = DEFAULT_BUDGETS,
    order_samples: int = 10**5,
    oracle_max_length: int = 6,
) -> VerifyReport:
    rng = np.random.default_rng(seed)
    suites = [
        lambda: order_laws(rng, order_samples),
        lambda: prefix_and_top_laws(rng, max(order_samples // 10, 1)),
        lambda: linalg_invariants(rng),
        lambda: rep_invariants(C.quiver, C.p, rng, budgets=budgets),
        lambda: oracle_equivalence(C, oracle_max_length, budgets),
        lambda: catalog_invariants(C, budgets),
        lambda: regular_gr_submodules(C, budgets),
        lambda: low_tubes_below_homogeneous(C),
        lambda: preprojectives_take_off(C, analysis.records),
        lambda: stable_tails_fix_rank(C),
        lambda: stable_gr_submodule_unique(C, budgets),
        lambda: preinjectives_above_regular_submodules(C, analysis.records, budgets),
        lambda: stable_fibers_regular(C, analysis.records),
        lambda: nearest_regular_predecessor(C, analysis.records),
        lambda: successors_keep_prefix(analysis.records),
        lambda: z_segment_shape(C, analysis),
        lambda: tail_shape(C, analysis),
    ]
    report = VerifyReport(quiver=C.quiver.name, p=C.p, L=C.L, seed=seed)
    for run in suites:
        res = run()
        status = "[green]ok[/]" if res.ok else f"[red]{len(res.failures)} failure(s)[/]"
        console.print(f"[dim]{res.name}: {res.checked} checked[/] {status}")
        report.suites.append(res)
    return report
