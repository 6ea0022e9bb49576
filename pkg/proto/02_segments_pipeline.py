#!/usr/bin/env python3
"""Proto 02: Segment pipeline over the preset quivers.

For each preset:
  - catalog up to L
  - take-off / central / landing labels from the L and L−Δ windows
  - segments with index types
  - a, b and the main theorem bounds
  - the sink-source criterion on type Ã

Usage:
  python proto/02_segments_pipeline.py                      # kronecker, a21 at L=11
  python proto/02_segments_pipeline.py --presets a21 --L 12
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from dotenv import load_dotenv
load_dotenv(Path(__file__).resolve().parents[1] / ".env")

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from grsegments.analysis.segments import analyze, check_sink_source_prop, verify_main_theorem
from grsegments.errors import BudgetExceeded
from grsegments.graph.hasse import build_successor_graph, save_dot
from grsegments.presets import preset
from grsegments.tame.catalog import build_catalog
from grsegments.tame.euler import euler_data

console = Console()
SAMPLES_DIR = Path(__file__).resolve().parents[1] / "data" / "samples"

PARTITION_COLORS = {"take_off": "cyan", "central": "green", "landing": "magenta", "unstable": "yellow"}


def run_preset(name: str, p: int, L: int, delta: int, jobs: int):
    Q = preset(name)
    try:
        C = build_catalog(Q, p, L, jobs=jobs)
    except BudgetExceeded as e:
        console.print(f"[red]{name}: {e}[/]")
        return None

    analysis = analyze(C, delta)

    table = Table(title=f"{name}: measure universe ({len(analysis.records)} measures)")
    table.add_column("μ")
    table.add_column("label")
    table.add_column("fiber", justify="right")
    table.add_column("positions")
    for r in analysis.records:
        color = PARTITION_COLORS[r.partition]
        table.add_row(str(r.measure), f"[{color}]{r.partition}[/]", str(r.fiber_size), ", ".join(r.positions_present))
    console.print(table)

    for s in analysis.segments:
        console.print(f"  {s.segment_id} [bold]{s.index_type}[/] {s.anchor}: {' < '.join(str(m) for m in s.measures)}")

    report = verify_main_theorem(C, analysis)
    if euler_data(Q).quiver_type.family == "A":
        ss = check_sink_source_prop(Q, C, analysis)
        console.print(f"  sink-source={ss.sink_source}, central preinjective={ss.preinjective_central}, "
                      f"Z segment={ss.z_segment}")

    G = build_successor_graph(analysis.records, analysis.edges, analysis.segments)
    save_dot(G, SAMPLES_DIR / f"{name}_p{p}_L{L}.dot", name=name)
    return report


def main():
    parser = argparse.ArgumentParser(description="grsegments segment pipeline")
    parser.add_argument("--presets", nargs="+", default=["kronecker", "a21"], help="Preset names")
    parser.add_argument("--p", type=int, default=2)
    parser.add_argument("--L", type=int, default=11)
    parser.add_argument("--delta", type=int, default=2)
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    console.print(Panel(
        f"[bold]grsegments[/] — segment pipeline\n"
        f"Presets: {', '.join(args.presets)}\n"
        f"F_{args.p}, L={args.L}, Δ={args.delta}",
        title="Pipeline Config",
        border_style="blue",
    ))

    reports = []
    for name in args.presets:
        console.rule(f"[bold]{name}[/]")
        report = run_preset(name, args.p, args.L, args.delta, args.jobs)
        if report is not None:
            reports.append(report)

    console.rule("[bold]Main theorem[/]")
    table = Table(title="Segment counts against a, b+1, b+3")
    table.add_column("quiver")
    table.add_column("type")
    table.add_column("a", justify="right")
    table.add_column("b", justify="right")
    table.add_column("Z", justify="right")
    table.add_column("central", justify="right")
    table.add_column("typed", justify="right")
    table.add_column("ok")
    for r in reports:
        table.add_row(
            r.quiver, r.quiver_type, str(r.a), str(r.b),
            str(r.z_segments), str(r.central_typed_segments), str(r.typed_segments),
            ("[green]yes[/]" if r.ok else "[red]no[/]") + (" [yellow]*[/]" if r.caveat else ""),
        )
    console.print(table)
    console.print(f"\n  DOT files saved to: {SAMPLES_DIR}")


if __name__ == "__main__":
    main()
