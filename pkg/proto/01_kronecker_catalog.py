#!/usr/bin/env python3
"""Proto 01: Kronecker catalog over F_2.

Builds every indecomposable of length ≤ L for 0 ⇉ 1, prints the catalog
with GR measures, and cross-checks the short modules against the
brute-force measure.

Usage:
  python proto/01_kronecker_catalog.py            # L=10
  python proto/01_kronecker_catalog.py --L 8 --p 3
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from dotenv import load_dotenv
load_dotenv(Path(__file__).resolve().parents[1] / ".env")

from rich.console import Console
from rich.table import Table

from grsegments.algebra.gr import brute_force_measure, gr_filtration
from grsegments.errors import BudgetExceeded
from grsegments.output import save_catalog
from grsegments.presets import preset
from grsegments.tame.catalog import build_catalog

console = Console()
SAMPLES_DIR = Path(__file__).resolve().parents[1] / "data" / "samples"

POSITION_COLORS = {"preprojective": "cyan", "regular": "green", "preinjective": "magenta"}


def main():
    parser = argparse.ArgumentParser(description="Kronecker catalog with GR measures")
    parser.add_argument("--p", type=int, default=2, help="Prime field size (default 2)")
    parser.add_argument("--L", type=int, default=10, help="Length bound (default 10)")
    parser.add_argument("--oracle-max", type=int, default=6, help="Brute-force modules up to this length")
    args = parser.parse_args()

    C = build_catalog(preset("kronecker"), args.p, args.L)

    table = Table(title=f"Kronecker over F_{args.p}, L={args.L}", show_lines=False)
    table.add_column("id", width=5)
    table.add_column("label", width=14)
    table.add_column("dims", width=8)
    table.add_column("μ")
    table.add_column("filtration")
    table.add_column("oracle", justify="center")
    for e in C.entries:
        M = C.rep(e)
        steps = " ⊂ ".join(str(T.dims) for T in gr_filtration(M))
        oracle = "—"
        if e.length <= args.oracle_max:
            try:
                oracle = "[green]=[/]" if brute_force_measure(M) == e.measure else "[red]≠[/]"
            except BudgetExceeded:
                oracle = "[dim]budget[/]"
        color = POSITION_COLORS[e.position]
        table.add_row(e.entry_id, f"[{color}]{e.label}[/]", str(e.dims), str(e.measure), steps, oracle)
    console.print(table)

    save_catalog(C, SAMPLES_DIR / f"kronecker_p{args.p}_L{args.L}")


if __name__ == "__main__":
    main()
