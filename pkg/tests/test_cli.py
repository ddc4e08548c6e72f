import json
import shutil
import subprocess
import sys

import pytest

from siltkit import cli
from siltkit.errors import ConsistencyError
from siltkit.report import FIELDS, from_json


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fixture_list(capsys):
    code, out, _ = run(capsys, "fixture-list", "--stable")
    assert code == 0
    ids = [x["id"] for x in json.loads(out)["result"]]
    assert "example-kronecker" in ids and "gamma-sec2-5" in ids


@pytest.mark.parametrize("argv", [
    ["basis", "--fixture", "n-2-3"],
    ["cartan", "--fixture", "commutative-square"],
    ["coxeter", "--fixture", "gamma-sub5"],
    ["flags", "--fixture", "n-2-2"],
    ["truncate", "--standard", "nakayama_cyclic(11,3)", "--vertices", "1,2,3,4,5,6,7,8,9"],
    ["quotient", "--fixture", "gamma-sec2-5", "--vertices", "7"],
    ["tensor", "--fixture", "a2-path", "--with", "a3-path"],
    ["stratify", "--fixture", "example-kronecker", "--vertices", "3"],
    ["ae-cohomology", "--fixture", "example-kronecker", "--vertices", "3"],
    ["hom", "--fixture", "bongartz-fails", "--source", "S1", "--target", "S1"],
    ["mutate", "--fixture", "n-2-3", "--steps", "L0,R0,L1"],
    ["enumerate", "--fixture", "a3-path"],
    ["audit", "--fixture", "n-2-3"],
    ["oracle", "--fixture", "example-kronecker"],
])
def test_verbs_json_round_trip(capsys, argv):
    code, out, _ = run(capsys, *argv, "--stable")
    assert code == 0
    data = from_json(out)
    assert tuple(data) == FIELDS
    assert data["command"]["verb"] == argv[0]
    assert data["timing_ms"] is None
    assert json.loads(json.dumps(data)) == data


def test_stable_output_is_byte_identical(capsys):
    argv = ["enumerate", "--fixture", "commutative-square", "--stable"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_timing_present_without_stable(capsys):
    _, out, _ = run(capsys, "cartan", "--fixture", "k")
    assert isinstance(json.loads(out)["timing_ms"], float)


@pytest.mark.parametrize("fid,nodes,edges", [("dual-numbers", 2, 1), ("a2-path", 5, 5)])
def test_dot_hasse(capsys, fid, nodes, edges):
    code, out, _ = run(capsys, "enumerate", "--fixture", fid, "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")
    assert out.count(" [label=") - out.count("->") == nodes
    assert out.count("->") == edges


def test_dot_unsupported_for_other_verbs(capsys):
    code, _, err = run(capsys, "cartan", "--fixture", "k", "--format", "dot")
    assert code == 1 and "UnsupportedFormat" in err


@pytest.mark.parametrize("argv", [
    ["cartan", "--fixture", "no-such-fixture"],
    ["cartan"],
    ["cartan", "--fixture", "k", "--standard", "ladder(3)"],
    ["truncate", "--fixture", "a3-path", "--vertices", "9"],
    ["mutate", "--fixture", "a3-path", "--steps", "X1"],
    ["mutate", "--fixture", "a3-path", "--steps", "L7"],
    ["audit", "--fixture", "a3-path"],
    ["cartan", "--fixture", "k", "--format", "yaml"],
    ["frobnicate"],
    ["enumerate", "--fixture", "k", "--d", "1"],
    ["cartan", "/nonexistent/file.alg"],
])
def test_input_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_consistency_error_exit_2(capsys, monkeypatch):
    def boom(*a, **k):
        raise ConsistencyError("rules disagree")

    monkeypatch.setattr(cli, "verdict", boom)
    code, _, err = run(capsys, "oracle", "--fixture", "k")
    assert code == 2 and "consistency" in err


def test_file_input(tmp_path, capsys):
    p = tmp_path / "n23.alg"
    p.write_text("algebra N23\nvertex 1 2\narrow x1 : 1 -> 2\narrow x2 : 2 -> 1\nrel x1*x2*x1\nrel x2*x1*x2\n")
    code, out, _ = run(capsys, "basis", str(p), "--stable")
    assert code == 0 and json.loads(out)["result"]["dimension"] == 6


def test_oracle_options(capsys):
    _, out, _ = run(capsys, "oracle", "--fixture", "extended-canonical-246", "--subsets", "none", "--stable")
    assert json.loads(out)["result"]["status"] == "Unknown"
    _, out, _ = run(capsys, "oracle", "--fixture", "ladder-4", "--factor", "a2-path", "--factor", "a4-path",
                    "--stable")
    data = json.loads(out)
    assert data["result"]["status"] == "Yes"
    assert data["certificate"][0]["rule"] == "R12"
    _, out, _ = run(capsys, "oracle", "--fixture", "gamma-e7", "--simply-connected", "--type", "E7",
                    "--stable")
    data = json.loads(out)
    assert data["result"]["status"] == "Yes" and data["certificate"][0]["rule"] == "R11"
    code, out, _ = run(capsys, "oracle", "--fixture", "n-2-3", "--audit", "--stable")
    assert code == 0


def test_stratify_output(capsys):
    _, out, _ = run(capsys, "stratify", "--fixture", "example-kronecker", "--vertices", "3", "--stable")
    res = json.loads(out)["result"]
    assert res["status"] == "no" and res["witness_degree"] == -1 and res["cohomology"]["-1"] == 1


@pytest.mark.skipif(shutil.which("siltkit") is None, reason="console script not installed")
def test_console_script():
    a = subprocess.run(["siltkit", "coxeter", "--fixture", "gamma-sec2-5", "--stable"],
                       capture_output=True, text=True, check=True).stdout
    b = subprocess.run([sys.executable, "-m", "siltkit.cli", "coxeter", "--fixture", "gamma-sec2-5", "--stable"],
                       capture_output=True, text=True, check=True).stdout
    assert a == b
    assert json.loads(a)["result"]["polynomial"] == "x^7 + x^6 - x^4 - x^3 + x + 1"
