"""The isored command line, driven in-process."""

import io
import json
import subprocess
import sys

import pytest

from isored.cli import main
from isored.fileformats import parse_network
from isored.reduction import reduce_graph

from test_fileformats import FOUR_VERTEX_DOC


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def four_vertex_path(tmp_path):
    p = tmp_path / "four_vertex.json"
    p.write_text(json.dumps(FOUR_VERTEX_DOC))
    return str(p)


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


def test_spectrum_table(four_vertex_path):
    code, out, _ = run("spectrum", "--input", four_vertex_path)
    assert code == 0
    assert "-i" in out and " 2 " in out


def test_spectrum_json_with_chains(four_vertex_path):
    code, out, _ = run("--output", "json", "spectrum", "--input", four_vertex_path, "--at", "i", "--chains")
    doc = json.loads(out)
    assert code == 0
    assert [(e["value"], e["multiplicity"]) for e in doc["spectrum"]] == [("-i", 2), ("i", 2)]
    assert doc["at"]["algebraic"] == 2 and doc["at"]["geometric"] == 1
    assert doc["at"]["chain"] == [["1", "i", "-1", "-i"], ["0", "1", "2i", "-3"]]


def test_spectrum_numeric_roots_exit_code(tmp_path):
    m = write(tmp_path, "m.json", {"rows": [["0", "1", "0"], ["0", "0", "-i"], ["-1", "0", "2i"]]})
    code, out, _ = run("spectrum", "--input", m, "--output", "json")
    assert code == 1
    assert json.loads(out)["exact"] is False


def test_chain_terminated_is_a_finding(tmp_path):
    m = write(tmp_path, "m.json", {"rows": [["0", "1", "0"], ["0", "0", "-i"], ["-1", "0", "2i"]]})
    code, _, _ = run("spectrum", "--input", m, "--at", "i", "--chains")
    assert code == 3


def test_reduce_roundtrip(four_vertex_path, net, tmp_path):
    code, out, _ = run("reduce", "--input", four_vertex_path, "--keep", "1,4", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert parse_network(out) == reduce_graph(net, [1, 4])
    assert doc["char_function"] == "(l^4 + 2*l^2 + 1)/l^2"


@pytest.mark.parametrize("method", ["graph", "block", "both"])
def test_reduce_methods(four_vertex_path, net, method):
    code, out, _ = run("reduce", "--input", four_vertex_path, "--keep", "1,4", "--method", method, "--output", "json")
    assert code == 0
    assert parse_network(out) == reduce_graph(net, [1, 4])


def test_reduce_via(four_vertex_path, net):
    code, out, _ = run("reduce", "--input", four_vertex_path, "--keep", "1,4", "--via", "1,3,4", "--output", "json")
    assert code == 0
    assert parse_network(out) == reduce_graph(net, [1, 4])


def test_reduce_errors(four_vertex_path):
    code, _, err = run("reduce", "--input", four_vertex_path, "--keep", "9")
    assert code == 2 and "BadVertexIndex" in err
    code, _, err = run("reduce", "--input", four_vertex_path, "--keep", "1,2")
    assert code == 2 and "hint:" in err
    code, out, _ = run("reduce", "--input", four_vertex_path, "--keep", "1,2", "--allow-nonstructural")
    assert code == 0


def test_check_preserve_all_sets(four_vertex_path):
    code, out, _ = run("check-preserve", "--input", four_vertex_path, "--all-sets", "--size", "2", "--at", "i",
                       "--output", "json")
    doc = json.loads(out)
    verdicts = {tuple(r["keep"]): (r["status"], r["c"]) for r in doc["results"]}
    assert verdicts == {
        (1, 3): ("preserved", "1"),
        (1, 4): ("preserved", "2"),
        (2, 3): ("preserved", "0"),
        (2, 4): ("preserved", "1"),
        (3, 4): ("not_preserved", None),
    }
    assert code == 3
    assert all(r["criteria_agree"] for r in doc["results"])


def test_check_preserve_single_set_with_chain(four_vertex_path):
    code, out, _ = run("check-preserve", "--input", four_vertex_path, "--keep", "1,4", "--at", "i",
                       "--vector", "i,-1,-i,1", "--chain-depth", "2", "--output", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["results"][0]["c"] == "2"
    assert doc["results"][0]["chain_verified"] is True


def test_reconstruct(four_vertex_path, tmp_path):
    code, out, _ = run("reduce", "--input", four_vertex_path, "--keep", "1,4", "--output", "json")
    reduced = tmp_path / "reduced.json"
    reduced.write_text(out)
    code, out, _ = run("reconstruct", "--input", str(reduced), "--original-topology", four_vertex_path,
                       "--at", "i", "--vector", "i,1")
    assert code == 0
    assert out.strip() == "i,-1,-i,1"
    code, out, _ = run("reconstruct", "--input", str(reduced), "--original-topology", four_vertex_path,
                       "--at", "i", "--vector=-3,0", "--prev", "i,-1,-i,1")
    assert out.strip() == "-3,-2i,1,0"
    code, _, _ = run("reconstruct", "--input", str(reduced), "--original-topology", four_vertex_path,
                     "--at", "i", "--vector", "1,0", "--prev", "1,0,0,1")
    assert code == 3


def test_equiv(four_vertex_path, tmp_path, net):
    code, out, _ = run("reduce", "--input", four_vertex_path, "--keep", "1,4", "--output", "json")
    b = tmp_path / "b.json"
    b.write_text(out)
    code, out, _ = run("equiv", "--a", four_vertex_path, "--b", str(b), "--rule", "keep:1,4", "--output", "json")
    assert code == 0
    assert (json.loads(out)["m"], json.loads(out)["k"]) == (1, 0)
    code, _, _ = run("equiv", "--a", four_vertex_path, "--b", str(b), "--rule", "mincover")
    assert code == 3
    code, _, _ = run("equiv", "--a", four_vertex_path, "--b", str(b), "--rule", "bogus")
    assert code == 2


def test_equiv_matrix(tmp_path):
    a = write(tmp_path, "a.json", {"rows": [["148/17", "206/17", "256/17"], ["-13/17", "-5/17", "-28/17"],
                                            ["-33/17", "-48/17", "-41/17"]]})
    b = write(tmp_path, "b.json", {"rows": [["1/27", "-39/27", "-10/27"], ["52/27", "105/27", "20/27"],
                                            ["43/27", "24/27", "56/27"]]})
    code, out, _ = run("equiv-matrix", "--a", a, "--b", b, "--dim", "2", "--output", "json")
    assert code == 3
    doc = json.loads(out)
    assert doc["equivalent"] is False
    assert sorted(doc["reductions_a"]) == ["1,2", "1,3", "2,3"]
    code, out, _ = run("equiv-matrix", "--a", a, "--b", a)
    assert code == 0


def test_validate_set(four_vertex_path, tmp_path):
    code, out, _ = run("validate-set", "--input", four_vertex_path, "--keep", "1,4", "--at", "i", "--output", "json")
    assert code == 0
    assert json.loads(out) == {"keep": [1, 4], "complement": [2, 3], "topo_order": [2, 3], "lambda0": "i"}
    looped = write(tmp_path, "l.json", {"n": 2, "edges": [{"from": 1, "to": 2, "w": "1"},
                                                          {"from": 2, "to": 1, "w": "1"},
                                                          {"from": 2, "to": 2, "w": "3"}]})
    code, _, err = run("validate-set", "--input", looped, "--keep", "1", "--at", "3")
    assert code == 2 and "NotLambda0Structural" in err


def test_bad_inputs(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("spectrum", "--input", str(bad))[0] == 2
    assert run("spectrum", "--input", str(tmp_path / "missing.json"))[0] == 2
    assert run("no-such-command")[0] == 2


def test_deterministic_output(four_vertex_path):
    first = run("--output", "json", "check-preserve", "--input", four_vertex_path, "--all-sets", "--size", "3", "--at", "-i")
    second = run("--output", "json", "check-preserve", "--input", four_vertex_path, "--all-sets", "--size", "3", "--at", "-i")
    assert first == second


def test_module_entry_point_reads_stdin():
    proc = subprocess.run(
        [sys.executable, "-m", "isored", "spectrum", "--input", "-"],
        input=json.dumps(FOUR_VERTEX_DOC), capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "i" in proc.stdout
