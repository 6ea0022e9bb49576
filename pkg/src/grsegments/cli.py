"""grseg: GR measures, tame catalogs and segment checks from the command line.

Usage:
  grseg catalog  --preset kronecker --p 2 --L 10
  grseg measure  --preset kronecker --module '{"dims": [1, 1], "maps": [...]}'
  grseg measure  --catalog out/catalog.json --id M004
  grseg segments --preset a21 --L 11
  grseg verify   --preset kronecker
  grseg presets

Exit codes: 0 ok, 1 property failure, 2 invalid input, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from dotenv import load_dotenv
from pydantic import ValidationError
from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from grsegments.algebra.gr import gr_filtration, gr_measure
from grsegments.algebra.rep import Quiver, Rep, is_indecomposable
from grsegments.analysis.properties import run_all
from grsegments.analysis.segments import (
    SegmentAnalysis,
    analyze,
    check_sink_source_prop,
    verify_main_theorem,
)
from grsegments.config import RunConfig
from grsegments.errors import BudgetExceeded, GrSegmentsError, InvalidInput
from grsegments.graph.hasse import build_successor_graph, graph_stats, save_dot
from grsegments.models import SuiteResult, TheoremReport
from grsegments.output import load_catalog, save_catalog, save_json, save_measures_csv
from grsegments.presets import DESCRIPTIONS, PRESETS, load_quiver_file, preset
from grsegments.tame.catalog import Catalog, build_catalog
from grsegments.tame.euler import euler_data

console = Console(stderr=True)
out_console = Console()

SEGMENT_COLOURS = {"N": "green", "NegN": "cyan", "Z": "magenta", "Unknown": "yellow"}


# ── Config ───────────────────────────────────────────────

def _add_common(parser: argparse.ArgumentParser) -> None:
    src = parser.add_mutually_exclusive_group()
    src.add_argument("--preset", help=f"Named quiver ({', '.join(PRESETS)})")
    src.add_argument("--quiver", type=Path, help="JSON quiver file {name, vertices, arrows, p?, L?}")
    src.add_argument("--catalog", type=Path, help="Reuse a saved catalog.json instead of building one")
    parser.add_argument("--p", type=int, help="Prime field size (default 2, or GRSEG_P)")
    parser.add_argument("--L", type=int, help="Length bound of the catalog (default 10, or GRSEG_L)")
    parser.add_argument("--delta", type=int, help="Window gap for stability labels (default 2)")
    parser.add_argument("--budget-subspace", type=int, help="Vectors enumerated per vertex")
    parser.add_argument("--budget-end", type=int, help="Hom/End elements enumerated per decision")
    parser.add_argument("--out", type=Path, help="Output directory (default out/)")
    parser.add_argument("--seed", type=int, help="Seed for randomized property suites")
    parser.add_argument("--format", action="append", choices=["csv", "json", "dot"], dest="formats",
                        help="Output formats, repeatable (default all)")
    parser.add_argument("--jobs", type=int, help="Worker threads for measure computation")
    parser.add_argument("--z-min-run", type=int, help="Preinjective-bearing fibers needed for a Z segment")


def _config(args: argparse.Namespace) -> RunConfig:
    fields = {
        "preset": args.preset,
        "quiver_path": args.quiver,
        "catalog_path": args.catalog,
        "p": args.p,
        "L": args.L,
        "delta": args.delta,
        "budget_subspace": args.budget_subspace,
        "budget_end": args.budget_end,
        "out": args.out,
        "seed": args.seed,
        "formats": tuple(args.formats) if args.formats else None,
        "jobs": args.jobs,
        "z_min_run": args.z_min_run,
    }
    if args.quiver is not None:
        qf = load_quiver_file(args.quiver)
        fields["p"] = fields["p"] or qf.p
        fields["L"] = fields["L"] or qf.L
    if args.preset is None and args.quiver is None and args.catalog is None:
        raise InvalidInput("give one of --preset, --quiver or --catalog")
    try:
        return RunConfig(**{k: v for k, v in fields.items() if v is not None})
    except ValidationError as e:
        raise InvalidInput(str(e)) from e


def _quiver(cfg: RunConfig) -> Quiver:
    if cfg.preset is not None:
        return preset(cfg.preset)
    return load_quiver_file(cfg.quiver_path).to_quiver()


def _catalog(cfg: RunConfig) -> Catalog:
    if cfg.catalog_path is not None:
        C = load_catalog(cfg.catalog_path)
        console.print(f"[dim]Loaded {len(C)} entries from {cfg.catalog_path}[/]")
        if C.partial:
            console.print("[yellow]This catalog is partial: a budget cap stopped its build[/]")
        if cfg.delta >= C.L:
            raise InvalidInput(f"delta {cfg.delta} must be smaller than the catalog's L={C.L}")
        return C
    try:
        return build_catalog(_quiver(cfg), cfg.p, cfg.L, cfg.budgets, cfg.jobs)
    except BudgetExceeded as e:
        if isinstance(e.result, Catalog) and ("json" in cfg.formats or "csv" in cfg.formats):
            save_catalog(e.result, cfg.out)
            console.print(f"[yellow]Partial catalog ({len(e.result)} entries) saved to {cfg.out}[/]")
        raise


# ── Tables ───────────────────────────────────────────────

def _print_catalog(C: Catalog) -> None:
    table = Table(title=f"{C.quiver.name} over F_{C.p}, L={C.L}: {len(C)} indecomposables")
    table.add_column("id")
    table.add_column("label")
    table.add_column("dims")
    table.add_column("position")
    table.add_column("defect", justify="right")
    table.add_column("μ")
    for e in C.entries:
        table.add_row(e.entry_id, e.label, str(e.dims), e.position, str(e.defect), str(e.measure))
    out_console.print(table)


def _print_segments(analysis: SegmentAnalysis) -> None:
    table = Table(title="GR segments", show_lines=True)
    table.add_column("id", width=4)
    table.add_column("index", width=8)
    table.add_column("anchor")
    table.add_column("measures")
    table.add_column("run", justify="right")
    for s in analysis.segments:
        colour = SEGMENT_COLOURS[s.index_type]
        shown = [str(m) for m in s.measures]
        if len(shown) > 6:
            shown = shown[:3] + ["…"] + shown[-2:]
        table.add_row(s.segment_id, f"[{colour}]{s.index_type}[/]", s.anchor, " < ".join(shown), str(s.preinjective_run))
    out_console.print(table)


def _print_theorem(report: TheoremReport) -> None:
    table = Table(title=f"{report.quiver} ({report.quiver_type}): a={report.a}, b={report.b}")
    table.add_column("check")
    table.add_column("value", justify="right")
    table.add_column("bound", justify="right")
    table.add_column("ok")
    for c in report.checks:
        ok = "[dim]n/a[/]" if c.ok is None else ("[green]yes[/]" if c.ok else "[red]no[/]")
        table.add_row(c.name, str(c.value), "—" if c.bound is None else str(c.bound), ok)
    out_console.print(table)
    if report.caveat:
        out_console.print(
            f"[yellow]Caveat: {report.unknown_segments} Unknown segment(s), "
            f"{report.unstable_measures} Unstable measure(s); raise L to settle them[/]"
        )


def _print_suites(suites: list[SuiteResult]) -> None:
    table = Table(title="Property suites")
    table.add_column("suite")
    table.add_column("checked", justify="right")
    table.add_column("result")
    for s in suites:
        table.add_row(s.name, str(s.checked), "[green]ok[/]" if s.ok else f"[red]{len(s.failures)} failed[/]")
    out_console.print(table)
    for s in suites:
        for f in s.failures:
            console.print(f"[red]{s.name}: {f}[/]")


# ── Commands ─────────────────────────────────────────────

def cmd_catalog(cfg: RunConfig) -> int:
    C = _catalog(cfg)
    if "json" in cfg.formats or "csv" in cfg.formats:
        save_catalog(C, cfg.out)
    _print_catalog(C)
    return 0


def _read_module(text: str) -> dict:
    path = Path(text)
    try:
        raw = path.read_text(encoding="utf-8") if not text.lstrip().startswith("{") and path.exists() else text
        return json.loads(raw)
    except (OSError, json.JSONDecodeError) as e:
        raise InvalidInput(f"--module is neither a JSON object nor a readable file: {e}") from e


def cmd_measure(cfg: RunConfig, module: str | None, entry_id: str | None) -> int:
    if (module is None) == (entry_id is None):
        raise InvalidInput("give exactly one of --module or --id")
    if module is not None:
        if cfg.catalog_path is not None:
            saved = load_catalog(cfg.catalog_path)
            Q, p = saved.quiver, saved.p
        else:
            Q, p = _quiver(cfg), cfg.p
        M = Rep.from_dict(Q, p, _read_module(module))
        name = "module"
    else:
        C = _catalog(cfg)
        M = C.rep(entry_id)
        name = f"{entry_id} {C.entry(entry_id).label}"
    if M.length == 0:
        raise InvalidInput("the GR measure of the zero module is undefined")

    result = gr_measure(M, cfg.budgets)
    out_console.print(f"μ({name}) = {result.measure}")
    if is_indecomposable(M, cfg.budgets):
        for T in result.gr_submodules:
            out_console.print(f"  GR submodule: dims {T.dims}")
        steps = " ⊂ ".join(str(T.dims) for T in gr_filtration(M, cfg.budgets))
        out_console.print(f"  GR filtration: {steps}")
    else:
        out_console.print("  decomposable: no GR submodules")
    return 0


def _analyze(cfg: RunConfig, C: Catalog) -> tuple[SegmentAnalysis, TheoremReport]:
    analysis = analyze(C, cfg.delta, cfg.z_min_run)
    report = verify_main_theorem(C, analysis)
    out = cfg.out
    if "csv" in cfg.formats:
        save_measures_csv(analysis.records, analysis.edges, analysis.segments, out / "measures.csv")
    if "json" in cfg.formats:
        save_json(analysis.segments, out / "segments.json", what="segments")
        save_json(report, out / "theorem_report.json", what="theorem report")
    if "dot" in cfg.formats:
        G = build_successor_graph(analysis.records, analysis.edges, analysis.segments)
        save_dot(G, out / "hasse.dot", name=C.quiver.name)
        stats = graph_stats(G)
        console.print(f"[dim]Successor graph: {stats['measures']} measures, {stats['segments']} segments[/]")
    return analysis, report


def cmd_segments(cfg: RunConfig) -> int:
    C = _catalog(cfg)
    analysis, report = _analyze(cfg, C)
    _print_segments(analysis)
    _print_theorem(report)
    return 0 if report.ok else 1


def cmd_verify(cfg: RunConfig) -> int:
    C = _catalog(cfg)
    analysis, report = _analyze(cfg, C)
    verify = run_all(C, analysis, cfg.seed, cfg.budgets)

    bounds = SuiteResult(name="main theorem bounds", checked=len(report.checks))
    bounds.failures = [f"{c.name}: {c.value} > {c.bound}" for c in report.checks if c.ok is False]
    verify.suites.append(bounds)

    if euler_data(C.quiver).quiver_type.family == "A":
        ss = check_sink_source_prop(C.quiver, C, analysis)
        suite = SuiteResult(name="sink-source criterion", checked=1)
        if not ss.consistent:
            suite.failures.append(
                f"sink_source={ss.sink_source}, preinjective_central={ss.preinjective_central}, "
                f"z_segment={ss.z_segment}"
            )
        verify.suites.append(suite)

    if "json" in cfg.formats:
        save_json(verify, cfg.out / "verify_report.json", what="verify report")
    _print_suites(verify.suites)
    _print_theorem(report)
    return 0 if verify.ok else 1


def cmd_presets() -> int:
    table = Table(title="Preset quivers")
    table.add_column("name")
    table.add_column("arrows")
    table.add_column("type")
    table.add_column("b", justify="right")
    table.add_column("shape")
    for name, Q in PRESETS.items():
        ed = euler_data(Q)
        table.add_row(name, str(list(Q.arrows)), str(ed.quiver_type), str(ed.quiver_type.expected_b), DESCRIPTIONS[name])
    out_console.print(table)
    return 0


# ── Main ─────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grseg", description="Gabriel-Roiter measures and segments for tame quivers")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_common(sub.add_parser("catalog", help="Build and save the catalog of indecomposables up to length L"))
    m = sub.add_parser("measure", help="GR measure, submodules and filtration of one module")
    _add_common(m)
    m.add_argument("--module", help="Representation as inline JSON or a path to a JSON file")
    m.add_argument("--id", dest="entry_id", help="Catalog entry id, e.g. M004")
    _add_common(sub.add_parser("segments", help="Partition, successors, segments and the main theorem report"))
    _add_common(sub.add_parser("verify", help="Run every property suite and the theorem bounds"))
    sub.add_parser("presets", help="List the preset quivers")
    return parser


def main(argv: list[str] | None = None) -> int:
    load_dotenv(Path.cwd() / ".env")
    args = build_parser().parse_args(argv)

    try:
        if args.command == "presets":
            return cmd_presets()
        cfg = _config(args)
        console.print(Panel(
            f"[bold]grseg {args.command}[/]\n"
            f"Quiver: {cfg.preset or cfg.quiver_path or cfg.catalog_path}\n"
            f"F_{cfg.p}, L={cfg.L}, Δ={cfg.delta}, jobs={cfg.jobs}",
            title="Run Config",
            border_style="blue",
        ))
        if args.command == "catalog":
            return cmd_catalog(cfg)
        if args.command == "measure":
            return cmd_measure(cfg, args.module, args.entry_id)
        if args.command == "segments":
            return cmd_segments(cfg)
        return cmd_verify(cfg)
    except InvalidInput as e:
        console.print(f"[red]Invalid input: {e}[/]")
        return 2
    except BudgetExceeded as e:
        console.print(f"[red]{e}[/]")
        return 3
    except GrSegmentsError as e:
        console.print(f"[red]{e}[/]")
        return 1


if __name__ == "__main__":
    sys.exit(main())
