"""Build a NetworkX directed graph of measures and direct successors."""

from __future__ import annotations

from pathlib import Path

import networkx as nx
from rich.console import Console

from grsegments.models import MeasureRecord, Segment, SuccessorEdge

console = Console(stderr=True)

CERTIFICATE_COLOURS = {
    "catalog_relative": "gray50",
    "theory_homogeneous": "blue",
    "theory_stable": "darkgreen",
}

PARTITION_SHAPES = {
    "take_off": "box",
    "central": "ellipse",
    "landing": "box",
    "unstable": "diamond",
    None: "plaintext",
}


def build_successor_graph(
    records: list[MeasureRecord],
    edges: list[SuccessorEdge],
    segments: list[Segment] | None = None,
) -> nx.DiGraph:
    """
    One node per measure (keyed by its text form), one edge per successor pair.

    Node attributes stored: partition, fiber_size, positions, segment.
    Edge attributes stored: certificate.
    """
    G = nx.DiGraph()
    segment_of: dict[tuple[int, ...], str] = {}
    for seg in segments or []:
        for m in seg.measures:
            segment_of[m.elements] = seg.segment_id

    for r in records:
        G.add_node(
            str(r.measure),
            partition=r.partition,
            fiber_size=r.fiber_size,
            positions=list(r.positions_present),
            segment=segment_of.get(r.measure.elements),
        )

    for e in edges:
        u, v = str(e.source), str(e.target)
        # Skip edges referencing unknown measures
        if u not in G or v not in G:
            continue
        G.add_edge(u, v, certificate=e.certificate)

    return G


def graph_stats(G: nx.DiGraph) -> dict:
    """Return a summary stats dict for a successor graph."""
    partitions: dict[str, int] = {}
    for _, data in G.nodes(data=True):
        label = data.get("partition") or "unlabelled"
        partitions[label] = partitions.get(label, 0) + 1

    certificates: dict[str, int] = {}
    for _, _, data in G.edges(data=True):
        c = data.get("certificate", "catalog_relative")
        certificates[c] = certificates.get(c, 0) + 1

    segments = {data["segment"] for _, data in G.nodes(data=True) if data.get("segment")}
    return {
        "measures": G.number_of_nodes(),
        "edges": G.number_of_edges(),
        "segments": len(segments),
        "partitions": dict(sorted(partitions.items())),
        "certificates": dict(sorted(certificates.items())),
    }


def to_dot(G: nx.DiGraph, name: str = "hasse") -> str:
    """DOT text via pydot, bottom to top; node and edge order follow G."""
    D = nx.DiGraph(name=name)
    D.graph["graph"] = {"rankdir": "BT"}
    for n, data in G.nodes(data=True):
        label = f"{n} ×{data.get('fiber_size', 0)}"
        if data.get("segment"):
            label += f" {data['segment']}"
        D.add_node(n, label=label, shape=PARTITION_SHAPES.get(data.get("partition"), "plaintext"))
    for u, v, data in G.edges(data=True):
        D.add_edge(u, v, color=CERTIFICATE_COLOURS[data.get("certificate", "catalog_relative")])
    P = nx.nx_pydot.to_pydot(D)
    # to_pydot marks loop-free graphs strict; edges are already unique
    P.set_strict(False)
    return P.to_string()


def save_dot(G: nx.DiGraph, path: Path, name: str = "hasse") -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(to_dot(G, name), encoding="utf-8")
    console.print(f"[dim]Saved {G.number_of_nodes()} measures, {G.number_of_edges()} edges → {path}[/]")
