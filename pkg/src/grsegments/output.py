"""Result files: catalog, measures, segments and reports.

JSON is always written with sorted keys and two-space indentation so that
reruns with the same inputs produce identical bytes.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from pydantic import BaseModel, ValidationError
from rich.console import Console

from grsegments.errors import InvalidInput
from grsegments.measure import parse_measure
from grsegments.models import MeasureRecord, Segment, SuccessorEdge
from grsegments.tame.catalog import Catalog

console = Console(stderr=True)

CATALOG_COLUMNS = [
    "entry_id", "label", "dims", "position", "defect",
    "tube_id", "quasi_socle", "quasi_length", "rank", "measure",
]

MEASURE_COLUMNS = ["measure", "partition", "fiber_size", "positions", "modules", "successor", "certificate", "segment"]


def dump_json(data) -> str:
    if isinstance(data, BaseModel):
        data = data.model_dump(mode="json")
    elif isinstance(data, list):
        data = [d.model_dump(mode="json") if isinstance(d, BaseModel) else d for d in data]
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save_json(data, path: Path, what: str = "records") -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_json(data), encoding="utf-8")
    n = len(data) if isinstance(data, list) else 1
    console.print(f"[dim]Saved {n} {what} → {path}[/]")


# ── Catalog ──────────────────────────────────────────────

def save_catalog(C: Catalog, out: Path) -> None:
    save_json(C, out / "catalog.json", what="catalog")
    rows = []
    for e in C.entries:
        rows.append({
            "entry_id": e.entry_id,
            "label": e.label,
            "dims": " ".join(str(d) for d in e.dims),
            "position": e.position,
            "defect": e.defect,
            "tube_id": "" if e.tube is None else e.tube.tube_id,
            "quasi_socle": "" if e.tube is None else e.tube.quasi_socle,
            "quasi_length": "" if e.tube is None else e.tube.quasi_length,
            "rank": "" if e.tube is None else e.tube.rank,
            "measure": str(e.measure),
        })
    _write_csv(rows, CATALOG_COLUMNS, out / "catalog.csv")


def load_catalog(path: Path) -> Catalog:
    try:
        return Catalog.model_validate_json(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValidationError) as e:
        raise InvalidInput(f"cannot load catalog from {path}: {e}") from e


# ── Measures ─────────────────────────────────────────────

def save_measures_csv(
    records: list[MeasureRecord],
    edges: list[SuccessorEdge],
    segments: list[Segment],
    path: Path,
) -> None:
    succ = {e.source.elements: e for e in edges}
    segment_of = {m.elements: s.segment_id for s in segments for m in s.measures}
    rows = []
    for r in records:
        edge = succ.get(r.measure.elements)
        rows.append({
            "measure": str(r.measure),
            "partition": r.partition or "",
            "fiber_size": r.fiber_size,
            "positions": " ".join(r.positions_present),
            "modules": " ".join(r.modules),
            "successor": "" if edge is None else str(edge.target),
            "certificate": "" if edge is None else edge.certificate,
            "segment": segment_of.get(r.measure.elements, ""),
        })
    _write_csv(rows, MEASURE_COLUMNS, path)


def load_measures_csv(path: Path) -> list[MeasureRecord]:
    records = []
    try:
        with open(path, newline="", encoding="utf-8") as f:
            for row in csv.DictReader(f):
                try:
                    records.append(MeasureRecord(
                        measure=parse_measure(row["measure"]),
                        modules=row["modules"].split(),
                        partition=row["partition"] or None,
                        positions_present=row["positions"].split(),
                    ))
                except Exception as e:
                    console.print(f"[yellow]Measure row parse error: {e}[/]")
    except OSError as e:
        raise InvalidInput(f"cannot read {path}: {e}") from e
    return records


# ── Segments ─────────────────────────────────────────────

def load_segments(path: Path) -> list[Segment]:
    try:
        items = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidInput(f"cannot load segments from {path}: {e}") from e
    if not isinstance(items, list):
        raise InvalidInput(f"{path}: expected a list of segments")
    segments = []
    for item in items:
        try:
            segments.append(Segment.model_validate(item))
        except ValidationError as e:
            console.print(f"[yellow]Segment parse error: {e}[/]")
    return segments


def _write_csv(rows: list[dict], columns: list[str], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.DictWriter(f, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    console.print(f"[dim]Saved {len(rows)} rows → {path}[/]")
