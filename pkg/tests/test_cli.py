import json

import pytest

from spanchrom import graph as gr
from spanchrom.cli import main

WEAK_C5 = {"variant": "weak", "field": {"p": 2, "e": 1}, "n": 3,
           "assignments": [[1, 0, 0], [0, 1, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]}


@pytest.fixture
def files(tmp_path):
    c5 = tmp_path / "c5.graph"
    gr.write_graph(gr.cycle_graph(5), c5)
    k3 = tmp_path / "k3.graph"
    gr.write_graph(gr.complete_graph(3), k3)
    col = tmp_path / "c5.json"
    col.write_text(json.dumps(WEAK_C5))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({**WEAK_C5, "assignments": [[1, 0, 0]] * 5}))
    return {"c5": str(c5), "k3": str(k3), "col": str(col), "bad": str(bad), "dir": tmp_path}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_repgraph(capsys, files):
    out_path = files["dir"] / "a2.graph"
    code, out, _ = run(capsys, "repgraph", "--q", "2", "--n", "2", "--out", str(out_path))
    assert code == 0
    assert out.splitlines()[0] == "A(GF(2)^2): 6 vertices, 3 edges"
    assert "(<(1,0)>,<(0,1)>)" in out
    assert gr.read_graph(out_path).n_edges == 3


def test_numbers(capsys, files):
    assert run(capsys, "span-chromatic", files["c5"], "--q", "2")[1].strip() == "3"
    assert run(capsys, "chromatic", files["c5"])[1].strip() == "3"
    assert run(capsys, "clique", files["c5"])[1].strip() == "2"
    code, out, _ = run(capsys, "hom", files["k3"], files["k3"], "--count", "--jobs", "2")
    assert code == 0 and out.strip() == "6"
    code, out, _ = run(capsys, "hom", files["c5"], files["k3"], "--json")
    assert code == 0 and len(json.loads(out)["homomorphism"]) == 5


def test_negative_verdicts(capsys, files):
    two = files["dir"] / "k2.graph"
    gr.write_graph(gr.complete_graph(2), two)
    assert run(capsys, "hom", files["c5"], str(two))[0] == 1
    assert run(capsys, "validate-colouring", files["c5"], files["bad"])[0] == 1
    assert run(capsys, "validate-colouring", files["c5"], files["col"])[0] == 0
    code, out, _ = run(capsys, "obstruction", "--q", "4", "--p", "3")
    assert code == 1 and "silent" in out


def test_obstruction_text(capsys):
    code, out, _ = run(capsys, "obstruction", "--q", "2", "--p", "3")
    assert code == 0 and "obstruction holds" in out


def test_usage_errors(capsys, files):
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2
    capsys.readouterr()
    with pytest.raises(SystemExit) as e:
        main(["chromatic", files["c5"], "--seed", "-3"])
    assert e.value.code == 2
    capsys.readouterr()
    code, _, err = run(capsys, "chromatic", str(files["dir"] / "missing.graph"))
    assert code == 2 and err.startswith("error:")
    code, _, err = run(capsys, "obstruction", "--q", "2", "--p", "4")
    assert code == 2
    code, _, err = run(capsys, "convert-colouring", files["col"], "--to", "full")
    assert code == 2


def test_seed_is_accepted(capsys, files):
    assert run(capsys, "chromatic", files["c5"], "--seed", "11")[0] == 0


def test_colouring_commands(capsys, files):
    code, out, _ = run(capsys, "convert-colouring", files["col"], "--to", "full", "--graph", files["c5"])
    full = json.loads(out)
    assert code == 0 and full["variant"] == "full"
    path = files["dir"] / "full.json"
    path.write_text(out)
    assert run(capsys, "validate-colouring", files["c5"], str(path))[0] == 0
    code, out, _ = run(capsys, "convert-colouring", str(path), "--to", "intermediate")
    assert json.loads(out)["assignments"][0] == [[1, 0, 0]]
    code, out, _ = run(capsys, "count-extensions", files["c5"], files["col"])
    assert code == 0 and int(out) >= 1


def test_census_and_two_core(capsys, files):
    code, out, _ = run(capsys, "census", "--q", "2", "--n", "3", "--json")
    d = json.loads(out)
    assert code == 0 and d["basis_count"] == 28 and d["fiber_counts"] == [3]
    code, out, _ = run(capsys, "two-core", files["c5"], "--json")
    assert json.loads(out)["trace"] == []


def test_complex_pipeline(capsys, files):
    code, out, _ = run(capsys, "complex", "join", "--n", "3", "--graph", files["c5"])
    K = files["dir"] / "k.json"
    K.write_text(out)
    code, out, _ = run(capsys, "classify", str(K), "--json")
    assert json.loads(out)["is_AnG"] and json.loads(out)["n"] == 3
    code, out, _ = run(capsys, "pmax", str(K), "--json")
    assert len(json.loads(out)["pmax"]) == 11
    code, out, _ = run(capsys, "nonfaces", str(K))
    assert out.split() == ["y1*y3", "y1*y4", "y2*y4", "y2*y5", "y3*y5"]
    assert run(capsys, "classify-n2", str(K))[0] == 2
    blocks = files["dir"] / "blocks.json"
    blocks.write_text(json.dumps([["x1", "y1", "y3"], ["x2", "y2", "y4"], ["x3", "y5"]]))
    assert run(capsys, "decomposition", str(K), str(blocks))[0] == 0


def test_steenrod_pipeline(capsys, files):
    code, out, _ = run(capsys, "steenrod", "build", "--graph", files["c5"], "--n", "3", "--colouring", files["col"])
    assert code == 0
    act = files["dir"] / "act.json"
    act.write_text(out)
    code, out, _ = run(capsys, "steenrod", "verify", str(act))
    assert code == 0 and "adem_on_generators: pass" in out
    code, out, _ = run(capsys, "steenrod", "extract", str(act), "--graph", files["c5"])
    assert code == 0 and json.loads(out)["colouring"]["variant"] == "full"
    # break Sq^2 on x1: verification now reports failure
    d = json.loads(act.read_text())
    d["sq2"]["x1"] = []
    act.write_text(json.dumps(d))
    code, out, _ = run(capsys, "steenrod", "verify", str(act))
    assert code == 1 and "FAIL" in out


def test_modp_and_bracket(capsys, files):
    col5 = files["dir"] / "c5p.json"
    col5.write_text(json.dumps({**WEAK_C5, "field": {"p": 5, "e": 1}}))
    code, out, _ = run(capsys, "steenrod", "modp", "--p", "5", "--graph", files["c5"], "--n", "3",
                       "--colouring", str(col5))
    assert code == 0 and "P^1(y1) = 2*x1^2*y1" in out
    code, _, _ = run(capsys, "steenrod", "modp", "--p", "7", "--graph", files["c5"], "--n", "3",
                     "--colouring", str(col5))
    assert code == 2
    code, out, _ = run(capsys, "bracket", files["c5"])
    assert out.strip() == "3 <= chi_Top <= 3"


def test_json_output_is_deterministic(capsys, files):
    a = run(capsys, "repgraph", "--q", "3", "--n", "2", "--json")[1]
    b = run(capsys, "repgraph", "--q", "3", "--n", "2", "--json")[1]
    assert a == b
    d = json.loads(a)
    assert len(d["vertices"]) == 12
