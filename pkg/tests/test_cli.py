import json

import pytest

from branchforge.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture()
def heawood(tmp_path, capsys):
    path = tmp_path / "heawood.txt"
    code, _, _ = _run(capsys, "gen", "projective", "--q", "2", "--out", str(path))
    assert code == 0
    return path


def test_gen_writes_graph_and_manifest(heawood, tmp_path):
    text = heawood.read_text()
    edge_lines = [l for l in text.splitlines() if l and not l.startswith("#")]
    assert len(edge_lines) == 21
    manifest = json.loads((tmp_path / "heawood.txt.manifest.json").read_text())
    assert manifest["command"] == "gen projective"
    assert manifest["parameters"] == {"q": 2}
    assert manifest["tool_version"]


def test_gen_td(capsys, tmp_path):
    out = tmp_path / "td.txt"
    code, _, _ = _run(capsys, "gen", "td", "--t", "4", "--q", "4", "--out", str(out))
    assert code == 0
    vertices = set()
    for line in out.read_text().splitlines():
        if line and not line.startswith("#"):
            vertices.update(line.split())
    assert len(vertices) == 32


def test_gen_biaffine_octagon(capsys):
    code, out, _ = _run(capsys, "gen", "biaffine", "--q", "2")
    assert code == 0
    edges = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert len(edges) == 8


def test_check_invariants(heawood, capsys):
    code, out, _ = _run(
        capsys,
        "check", "invariants", "--graph", str(heawood),
        "--expect-girth", "6", "--expect-diameter", "3",
    )
    assert code == 0
    report = json.loads(out)
    assert report["valence"] == [3, 3]
    code, _, _ = _run(
        capsys, "check", "invariants", "--graph", str(heawood), "--expect-girth", "5"
    )
    assert code == 1


def test_check_branching_exit_codes(heawood, capsys):
    code, out, _ = _run(capsys, "check", "branching", "--graph", str(heawood), "-n", "1", "-m", "6")
    assert code == 0
    assert "entries" in json.loads(out)
    code, out, _ = _run(capsys, "check", "branching", "--graph", str(heawood), "-n", "2", "-m", "6")
    assert code == 1
    failure = json.loads(out)["failure"]
    assert failure["reason"] == "NoWitnessSystem"
    assert len(failure["P"]) == 2


def test_check_inseparable(heawood, capsys):
    code, out, _ = _run(capsys, "check", "inseparable", "--graph", str(heawood))
    assert code == 0
    assert json.loads(out)["inseparable"] is True


def test_certify_roundtree_surface_flow(heawood, tmp_path, capsys):
    cert = tmp_path / "cert.json"
    code, _, _ = _run(
        capsys, "certify", "--graph", str(heawood), "-n", "1", "-m", "6",
        "--out", str(cert),
    )
    assert code == 0
    assert json.loads(cert.read_text())["n"] == 1
    assert (tmp_path / "cert.json.manifest.json").exists()

    stage = tmp_path / "stage.json"
    code, out, _ = _run(
        capsys,
        "roundtree", "--graph", str(heawood), "-n", "1", "-m", "6",
        "--depth", "2", "--sample", "40", "--seed", "3", "--out", str(stage),
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["verification"]["passed"] is True
    assert payload["isometry"]["passed"] is True
    assert stage.exists()

    complex_path = tmp_path / "surface.json"
    code, out, _ = _run(
        capsys,
        "surface", "--graph", str(heawood), "--cert", str(cert),
        "--out", str(complex_path),
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["genus"] >= 1
    assert payload["confdim_bound"] == 1.0

    code, out, _ = _run(capsys, "check", "surface", "--complex", str(complex_path))
    assert code == 0


def test_roundtree_without_certificate_is_an_error(capsys, tmp_path):
    path = tmp_path / "heawood.txt"
    _run(capsys, "gen", "projective", "--q", "2", "--out", str(path))
    code, _, err = _run(
        capsys, "roundtree", "--graph", str(path), "-n", "2", "-m", "6", "--depth", "1"
    )
    assert code == 2
    assert "not (2,6)-branching" in err


def test_max_n(heawood, capsys):
    code, out, _ = _run(capsys, "max-n", "--graph", str(heawood), "-m", "6")
    assert code == 0
    assert json.loads(out) == {"m": 6, "max_n": 1}


def test_bound_commands(capsys):
    code, out, _ = _run(capsys, "bound", "branching", "-n", "3", "-m", "6")
    assert code == 0
    assert "1.458156" in out
    code, out, _ = _run(capsys, "bound", "genus", "-n", "3", "-E", "34", "--json")
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(2.7)
    code, out, _ = _run(capsys, "bound", "mackay", "-V", "3", "-H", "11", "--json")
    assert json.loads(out)["value"] == pytest.approx(1.4581569099913263)
    code, out, _ = _run(capsys, "bound", "min-edges", "-n", "3", "--json")
    assert json.loads(out)["value"] == 34.0
    code, out, _ = _run(capsys, "bound", "genm", "-m", "4", "-q", "2", "--json")
    assert "(2, 8)" in json.loads(out)["formula"]


def test_bad_generator_params_exit_2(capsys):
    code, _, err = _run(capsys, "gen", "projective", "--q", "6")
    assert code == 2
    assert "error:" in err


def test_missing_graph_argument(capsys):
    code, _, err = _run(capsys, "check", "branching", "-n", "1", "-m", "6")
    assert code == 2
