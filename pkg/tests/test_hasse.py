from grsegments.graph.hasse import build_successor_graph, graph_stats, save_dot, to_dot


def kronecker_graph(analysis):
    return build_successor_graph(analysis.records, analysis.edges, analysis.segments)


def test_graph_stats(kronecker_analysis):
    G = kronecker_graph(kronecker_analysis)
    stats = graph_stats(G)
    assert stats["measures"] == 14
    assert sum(stats["partitions"].values()) == 14
    assert stats["partitions"]["landing"] == 3
    assert stats["certificates"]["theory_homogeneous"] >= 1
    assert 0 < stats["segments"] <= len(kronecker_analysis.segments)
    assert G.nodes["{1,2}"]["partition"] == "central"
    assert G.edges["{1,2}", "{1,2,4}"]["certificate"] == "theory_homogeneous"


def test_dot_export(kronecker_analysis):
    G = kronecker_graph(kronecker_analysis)
    dot = to_dot(G, name="kronecker")
    assert dot.startswith("digraph")
    assert "rankdir=BT" in dot
    assert '"{1,2}"' in dot
    assert "color=blue" in dot
    assert dot.count("->") == G.number_of_edges()
    assert "certificate" not in dot and "positions" not in dot


def test_save_dot_is_deterministic(kronecker_analysis, tmp_path):
    G = kronecker_graph(kronecker_analysis)
    save_dot(G, tmp_path / "a.dot")
    save_dot(kronecker_graph(kronecker_analysis), tmp_path / "b.dot")
    assert (tmp_path / "a.dot").read_bytes() == (tmp_path / "b.dot").read_bytes()
