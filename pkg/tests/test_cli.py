import json

import pytest

from grsegments.cli import main
from grsegments.output import load_catalog, load_measures_csv, load_segments
from grsegments.measure import GrMeasure

H1 = json.dumps({"dims": [1, 1], "maps": [{"arrow": 0, "entries": [[1]]}, {"arrow": 1, "entries": [[0]]}]})


def test_presets(capsys):
    assert main(["presets"]) == 0
    assert "kronecker" in capsys.readouterr().out


def test_catalog_command(tmp_path):
    assert main(["catalog", "--preset", "kronecker", "--L", "6", "--out", str(tmp_path)]) == 0
    C = load_catalog(tmp_path / "catalog.json")
    assert C.L == 6 and len(C) == 15
    assert (tmp_path / "catalog.csv").exists()


def test_measure_inline_module(capsys):
    assert main(["measure", "--preset", "kronecker", "--module", H1]) == 0
    out = capsys.readouterr().out
    assert "= {1,2}" in out
    assert "GR submodule: dims (0, 1)" in out


def test_measure_from_saved_catalog(tmp_path, capsys):
    main(["catalog", "--preset", "kronecker", "--L", "4", "--out", str(tmp_path)])
    capsys.readouterr()
    assert main(["measure", "--catalog", str(tmp_path / "catalog.json"), "--L", "4", "--id", "M000"]) == 0
    assert "μ(M000" in capsys.readouterr().out


def test_invalid_input_exits_2(tmp_path):
    assert main(["catalog", "--preset", "nope", "--out", str(tmp_path)]) == 2
    assert main(["catalog", "--preset", "kronecker", "--p", "4", "--out", str(tmp_path)]) == 2
    assert main(["segments", "--preset", "kronecker", "--L", "4", "--delta", "4", "--out", str(tmp_path)]) == 2
    assert main(["measure", "--preset", "kronecker", "--module", "{bad"]) == 2
    assert main(["catalog", "--out", str(tmp_path)]) == 2


def test_budget_exhaustion_exits_3(tmp_path):
    assert main(["catalog", "--preset", "kronecker", "--L", "6", "--budget-end", "1", "--out", str(tmp_path)]) == 3
    partial = load_catalog(tmp_path / "catalog.json")
    assert partial.partial and partial.L == 6
    assert (tmp_path / "catalog.csv").exists()


def test_partial_catalog_not_written_without_catalog_formats(tmp_path):
    args = ["segments", "--preset", "kronecker", "--L", "6", "--budget-end", "1", "--format", "dot"]
    assert main(args + ["--out", str(tmp_path)]) == 3
    assert not (tmp_path / "catalog.json").exists()


def test_quiver_file(tmp_path):
    qf = tmp_path / "kr.json"
    qf.write_text(json.dumps({"name": "kr", "vertices": 2, "arrows": [[0, 1], [0, 1]], "p": 3, "L": 4}))
    assert main(["catalog", "--quiver", str(qf), "--out", str(tmp_path)]) == 0
    C = load_catalog(tmp_path / "catalog.json")
    assert C.p == 3 and C.L == 4


def test_segments_outputs(tmp_path):
    assert main(["segments", "--preset", "kronecker", "--L", "10", "--out", str(tmp_path)]) == 0
    records = load_measures_csv(tmp_path / "measures.csv")
    assert len(records) == 14
    assert {r.measure for r in records if r.partition == "landing"} == {
        GrMeasure.of(1, 2, 3), GrMeasure.of(1, 2, 4, 5), GrMeasure.of(1, 2, 4, 6, 7),
    }
    segments = load_segments(tmp_path / "segments.json")
    assert {s.anchor for s in segments} == {"take_off", "landing", "homogeneous"}
    report = json.loads((tmp_path / "theorem_report.json").read_text())
    assert report["b"] == 0 and report["a"] == 0
    dot = (tmp_path / "hasse.dot").read_text()
    assert dot.startswith("digraph") and "{1,2}" in dot


def test_format_selection(tmp_path):
    assert main(["segments", "--preset", "kronecker", "--L", "6", "--format", "json", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "segments.json").exists()
    assert not (tmp_path / "measures.csv").exists()
    assert not (tmp_path / "hasse.dot").exists()


def test_segments_are_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(["segments", "--preset", "kronecker", "--L", "8", "--out", str(a)]) == 0
    assert main(["segments", "--preset", "kronecker", "--L", "8", "--jobs", "3", "--out", str(b)]) == 0
    for name in ("measures.csv", "segments.json", "theorem_report.json", "hasse.dot"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


@pytest.mark.slow
def test_verify(tmp_path):
    assert main(["verify", "--preset", "kronecker", "--L", "8", "--out", str(tmp_path)]) == 0
    report = json.loads((tmp_path / "verify_report.json").read_text())
    assert any(s["name"] == "sink-source criterion" for s in report["suites"])
