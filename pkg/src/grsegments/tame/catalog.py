"""Bounded-length catalog of indecomposables for a tame quiver.

Preprojectives τ⁻ⁱP(v) and preinjectives τⁱI(v) come from Coxeter functors
applied to explicit projectives and injectives; regular modules are the X_i
of every detected tube. Orbit lengths are predicted from Φ and Φ⁻¹ before
any module is built.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np
from pydantic import BaseModel, PrivateAttr
from rich.console import Console

from grsegments.algebra.gr import GrMemo, measure_of
from grsegments.algebra.rep import Quiver, Rep
from grsegments.config import DEFAULT_BUDGETS, Budgets
from grsegments.errors import BudgetExceeded, ConstructionError, InvalidInput
from grsegments.measure import GrMeasure
from grsegments.models import CatalogEntry, Position, RepRecord, TubeInfo
from grsegments.tame.dedup import find_isoclass_clusters
from grsegments.tame.euler import EulerData, defect, euler_data
from grsegments.tame.functors import ar_translate
from grsegments.tame.tubes import Tube, detect_tubes, x_chain

console = Console(stderr=True)

RATIONAL_POINT_NOTE = (
    "homogeneous tubes are listed for F_p-rational points of the projective line only"
)


class Catalog(BaseModel):
    quiver: Quiver
    p: int
    L: int
    note: str = RATIONAL_POINT_NOTE
    # set when a budget cap stopped the build; entries are then incomplete
    partial: bool = False
    entries: list[CatalogEntry]

    _reps: dict[str, Rep] = PrivateAttr(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, entry_id: str) -> CatalogEntry:
        for e in self.entries:
            if e.entry_id == entry_id:
                return e
        raise InvalidInput(f"no catalog entry {entry_id!r}")

    def rep(self, entry: CatalogEntry | str) -> Rep:
        if isinstance(entry, str):
            entry = self.entry(entry)
        M = self._reps.get(entry.entry_id)
        if M is None:
            M = entry.module.to_rep(self.quiver, self.p)
            self._reps[entry.entry_id] = M
        return M

    def by_position(self, position: Position) -> list[CatalogEntry]:
        return [e for e in self.entries if e.position == position]

    def tube_entries(self) -> dict[int, list[CatalogEntry]]:
        out: dict[int, list[CatalogEntry]] = {}
        for e in self.entries:
            if e.tube is not None:
                out.setdefault(e.tube.tube_id, []).append(e)
        return out

    def chain(self, tube_id: int, quasi_socle: int) -> dict[int, CatalogEntry]:
        """quasi_length → entry for the X_i sharing one quasi-socle."""
        return {
            e.tube.quasi_length: e
            for e in self.entries
            if e.tube is not None and e.tube.tube_id == tube_id and e.tube.quasi_socle == quasi_socle
        }


# ── Orbits ───────────────────────────────────────────────

def _last_index_within(ed: EulerData, start: tuple[int, ...], step: np.ndarray, L: int) -> int:
    """Largest k with |stepᵏ·start| ≤ L, stopping after n consecutive misses."""
    d = np.asarray(start, dtype=np.int64)
    n = ed.quiver.vertex_count
    k, last, misses = 0, -1, 0
    while misses < n:
        if (d < 0).any():
            raise ConstructionError(f"orbit from {start} left the positive cone at step {k}")
        if d.sum() <= L:
            last, misses = k, 0
        else:
            misses += 1
        d = step @ d
        k += 1
    return last


def _orbit_entries(
    ed: EulerData,
    start: Rep,
    step: np.ndarray,
    direction: str,
    L: int,
    name: str,
    position: Position,
) -> list[tuple[Rep, str, Position, TubeInfo | None]]:
    last = _last_index_within(ed, start.dims, step, L)
    out = []
    M: Rep | None = start
    sign = "-" if direction == "tau_inverse" else ""
    for k in range(last + 1):
        assert M is not None
        if M.length <= L:
            label = name if k == 0 else f"τ^{sign}{k} {name}"
            out.append((M, label, position, None))
        if k < last:
            predicted = tuple(int(x) for x in step @ np.asarray(M.dims))
            M = ar_translate(M, direction, check=False)
            if M is None or M.dims != predicted:
                raise ConstructionError(f"{name}: functor and Coxeter matrix disagree at step {k + 1}")
    return out


def _preprojectives(ed: EulerData, p: int, L: int) -> list:
    out = []
    for v in range(ed.quiver.vertex_count):
        P = Rep.projective(ed.quiver, p, v)
        out += _orbit_entries(ed, P, ed.coxeter_inverse, "tau_inverse", L, f"P({v})", "preprojective")
    return out


def _preinjectives(ed: EulerData, p: int, L: int) -> list:
    out = []
    for v in range(ed.quiver.vertex_count):
        I = Rep.injective(ed.quiver, p, v)
        out += _orbit_entries(ed, I, ed.coxeter_matrix, "tau", L, f"I({v})", "preinjective")
    return out


def _regulars(tubes: list[Tube], L: int, budgets: Budgets) -> list:
    out = []
    for t, tube in enumerate(tubes):
        for k, X in enumerate(tube.orbit):
            n, length = 0, 0
            while length + tube.shifted(k, n).length <= L:
                length += tube.shifted(k, n).length
                n += 1
            if n == 0:
                continue
            for i, M in enumerate(x_chain(X, n, budgets), start=1):
                info = TubeInfo(tube_id=t, quasi_socle=k, quasi_length=i, rank=tube.rank)
                out.append((M, f"T{t}[{k}]_{i}", "regular", info))
    return out


# ── Build ────────────────────────────────────────────────

def _measure_all(found: list, budgets: Budgets, memo: GrMemo, jobs: int) -> list[GrMeasure | BudgetExceeded]:
    """One measure per module, or the BudgetExceeded that stopped it."""

    def one(f) -> GrMeasure | BudgetExceeded:
        try:
            return measure_of(f[0], budgets, memo)
        except BudgetExceeded as e:
            return e

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, found))
    return [one(f) for f in found]


def build_catalog(
    Q: Quiver,
    p: int,
    L: int,
    budgets: Budgets = DEFAULT_BUDGETS,
    jobs: int = 1,
    memo: GrMemo | None = None,
) -> Catalog:
    """
    Enumerate, deduplicate and measure every indecomposable of length ≤ L.

    On budget exhaustion the work finished so far is still assembled into a
    Catalog flagged partial=True and attached to the raised BudgetExceeded.
    """
    ed = euler_data(Q)
    console.print(f"[dim]Building catalog: {Q.name} ({ed.quiver_type}) over F_{p}, L={L}[/]")

    stopped: BudgetExceeded | None = None
    found: list[tuple[Rep, str, Position, TubeInfo | None]] = []
    try:
        found += _preprojectives(ed, p, L)
        found += _preinjectives(ed, p, L)
        found += _regulars(detect_tubes(ed, p, budgets), L, budgets)
    except BudgetExceeded as e:
        stopped = e
        console.print(f"[yellow]Enumeration stopped after {len(found)} modules: {e}[/]")

    # a simple projective-injective pair can show up on both sides; keep the first copy
    reps = [f[0] for f in found]
    try:
        clusters = find_isoclass_clusters(reps, budgets=budgets)
    except BudgetExceeded as e:
        stopped = stopped or e
        clusters = []
        console.print(f"[yellow]Isomorphism merge skipped, entries may repeat: {e}[/]")
    drop = {i for c in clusters for i in c[1:]}
    for c in clusters:
        labels = ", ".join(found[i][1] for i in c)
        console.print(f"[yellow]Isomorphic catalog candidates merged: {labels}[/]")
    found = [f for i, f in enumerate(found) if i not in drop]

    memo = memo if memo is not None else GrMemo()
    console.print(f"[dim]Computing GR measures for {len(found)} modules (jobs={jobs})...[/]")
    measured = []
    for f, mu in zip(found, _measure_all(found, budgets, memo, jobs)):
        if isinstance(mu, BudgetExceeded):
            stopped = stopped or mu
            console.print(f"[yellow]No measure for {f[1]} within budget; left out[/]")
        else:
            measured.append((f, mu))

    rows = sorted(measured, key=lambda r: r[0][0].sort_key())
    entries = []
    for idx, ((M, label, position, info), mu) in enumerate(rows):
        entries.append(CatalogEntry(
            entry_id=f"M{idx:03d}",
            label=label,
            dims=M.dims,
            position=position,
            defect=defect(ed, M.dims),
            tube=info,
            measure=mu,
            module=RepRecord.from_rep(M),
        ))
    catalog = Catalog(quiver=Q, p=p, L=L, partial=stopped is not None, entries=entries)
    for e, ((M, *_), _) in zip(entries, rows):
        catalog._reps[e.entry_id] = M

    counts = {pos: len(catalog.by_position(pos)) for pos in ("preprojective", "regular", "preinjective")}
    console.print(
        f"[dim]Catalog: {len(entries)} entries "
        f"({counts['preprojective']} preprojective, {counts['regular']} regular, "
        f"{counts['preinjective']} preinjective)[/]"
    )
    if stopped is not None:
        raise BudgetExceeded(
            stopped.what, stopped.needed, stopped.cap, partial=len(entries), result=catalog
        ) from stopped
    return catalog


def truncate(C: Catalog, L: int) -> Catalog:
    """The sub-catalog of entries of length ≤ L; ids and measures are kept."""
    if L > C.L:
        raise InvalidInput(f"cannot widen a catalog from L={C.L} to L={L}")
    entries = [e for e in C.entries if e.length <= L]
    out = Catalog(quiver=C.quiver, p=C.p, L=L, note=C.note, partial=C.partial, entries=entries)
    for e in entries:
        if e.entry_id in C._reps:
            out._reps[e.entry_id] = C._reps[e.entry_id]
    return out
