import json
import subprocess
import sys

import jsonschema
import pytest

from tfab import acceptance
from tfab.cli import main, run_command
from tfab.schemas import SCHEMAS


@pytest.fixture
def files(tmp_path):
    def put(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return {
        "Z": put("Z.tfab", "group Z\nsummand (0;) rank=1\n"),
        "ZQ": put("ZQ.tfab", "group ZQ\nsummand (0;) rank=1\nsummand (inf;) rank=1\n"),
        "ZZ": put("ZZ.tfab", "group ZZ\nsummand (0;) rank=2\n"),
        "x": put("x.tfab", "elem x in Z\ncoord 0.0 = 6\n"),
        "u": put("u.tfab", "elem u in ZZ\ncoord 0.0 = 2\n"),
        "v": put("v.tfab", "elem v in ZZ\ncoord 0.0 = 3\n"),
        "w": put("w.tfab", "elem w in ZZ\ncoord 0.1 = 1\n"),
        "bad": put("bad.tfab", "group B\nsummand (0; 2:0) rank=1\n"),
        "tt": put("tt.json", json.dumps({
            "rank": 2, "expression": [[1, 0], [0, 1]],
            "locals": {"3": {"case": 4, "kind": "FiniteLadder",
                             "data": {"k": 0, "l": 0, "steps": [[2, 1, 1]],
                                      "infinite": False, "swapped": False}}},
            "default": {"case": 2, "kind": "IndepFinite", "data": {"k": 0, "l": 0}}})),
    }


def run_json(argv, schema):
    res = run_command(argv + ["--json"])
    obj = json.loads(json.dumps(res.obj))
    jsonschema.validate(obj, SCHEMAS[schema])
    return res, obj


def test_ee_text(files):
    res = run_command(["ee", files["Z"], files["ZQ"]])
    assert res.code == 0 and res.text == "elementarily equivalent: true"


@pytest.mark.parametrize("cmd, want", [
    ("ee", True), ("iso1", False), ("isotypic", False), ("iso", False),
])
def test_decisions(files, cmd, want):
    res, obj = run_json([cmd, files["Z"], files["ZQ"]], "decision")
    assert obj["value"] is want


def test_height(files):
    res = run_command(["height", "--group", files["Z"], "--elem", files["x"], "--prime", "2"])
    assert res.code == 0 and res.text == "1"
    _, obj = run_json(["height", "--group", files["Z"], "--elem", files["x"]], "height")
    assert obj["characteristic"] == "(0; 2:1, 3:1)"


def test_char_and_lattice():
    _, obj = run_json(["char", "(0; 2:7, 3:inf)"], "char")
    assert obj["htype"] == "[0; 3]"
    _, obj = run_json(["meet", "(0; 2:inf, 3:4)", "(0; 3:1, 5:2)"], "meet")
    assert obj["characteristic"] == "(0; 3:1)" and obj["leq"] is False
    assert run_command(["join", "(0; 2:3)", "(0; 2:5)"]).text == "(0; 2:5)"
    assert run_command(["htype", "(inf; 5:0)"]).text == "[inf; 5]"


def test_reduce(files):
    _, obj = run_json(["reduce", "--group", files["ZZ"], "--elem", files["u"],
                       "--elem", files["v"], "--elem", files["w"]], "reduce")
    assert obj["rank"] == 2 and len(obj["expression"]) == 3


def test_profile(files):
    res, obj = run_json(["profile", files["ZQ"]], "profile")
    assert obj["szmielew"]["Tf"]["default"] == 1
    assert "N(A,t)" in run_command(["profile", files["ZQ"]]).text


def test_realize2_ladder():
    res, obj = run_json(["realize2", "--prime", "3", "--ladder", "0,0; 2:1,1",
                         "--precision", "8"], "realize2-ladder")
    assert res.code == 0 and obj["verification"]["ok"]
    assert obj["ladder"] == "0,0; 2:1,1"


def test_realize2_twotype(files):
    res, obj = run_json(["realize2", "--twotype", files["tt"], "--precision", "12"],
                        "realize2-twotype")
    assert res.code == 0 and obj["roundtrip"] is True


def test_extract2(tmp_path, files):
    res, obj = run_json(["extract2", "--group", files["ZZ"], "--elem", files["u"],
                         "--elem", files["w"]], "extract2-pair")
    assert obj["rank"] == 2
    res, obj = run_json(["extract2", "--prime", "3", "--a", "1,0", "--b", "8,9",
                         "--precision", "8"], "extract2-ladder")
    assert obj["steps"] == [[2, 1, 1]]


def test_uniq_check():
    res, obj = run_json(["uniq-check", "--prime", "3", "--ladder", "0,0; 1:1,1; 3:1,2",
                         "--precision", "10"], "uniq-check")
    assert res.code == 0 and obj["verdict"] == "PASS"


def test_precision_env(monkeypatch):
    monkeypatch.setenv("TFAB_PRECISION", "9")
    _, obj = run_json(["realize2", "--prime", "5", "--ladder", "0,0; 3:1,1"], "realize2-ladder")
    assert obj["N"] == 9
    monkeypatch.setenv("TFAB_PRECISION", "zero")
    assert run_command(["realize2", "--prime", "5", "--ladder", "0,0; 3:1,1"]).code == 2


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["char", "(0; 2:0)"],
    ["ee", "/nonexistent/file.tfab", "/nonexistent/other.tfab"],
    ["realize2", "--prime", "3"],
])
def test_usage_and_parse_errors(argv):
    assert run_command(argv).code == 2


def test_parse_error_json(files):
    res, obj = run_json(["profile", files["bad"]], "error")
    assert res.code == 2 and obj["error"] == "SemanticError" and "line 2" in obj["message"]


def test_precision_exit_code():
    res, obj = run_json(["realize2", "--prime", "3", "--ladder", "0,0; 7:1,1",
                         "--precision", "6"], "error")
    assert res.code == 3 and obj["error"] == "InsufficientPrecision"
    res = run_command(["extract2", "--prime", "3", "--a", "0,0", "--b", "1,0",
                       "--precision", "6"])
    assert res.code == 3


def test_property_failure_exit_code(monkeypatch):
    monkeypatch.setitem(acceptance.CRITERIA, 1, ("always fails", None, lambda: (False, ["x"])))
    res, obj = run_json(["selftest", "--criteria", "1"], "selftest")
    assert res.code == 1 and obj["failed"] == 1


def test_selftest_subset():
    res, obj = run_json(["selftest", "--criteria", "5,7"], "selftest")
    assert res.code == 0 and obj["passed"] == 2


def test_main_streams(capsys, files):
    assert main(["ee", files["Z"], files["ZZ"]]) == 0
    assert capsys.readouterr().out.strip() == "elementarily equivalent: false"
    assert main(["char", "nonsense"]) == 2
    assert "parse error" in capsys.readouterr().err


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "tfab", "--json", "iso1", files["Z"], files["Z"]],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] is True


def test_documented_schemas_match_code():
    from pathlib import Path
    doc = Path(__file__).resolve().parents[1] / "docs" / "schemas.json"
    assert json.loads(doc.read_text()) == json.loads(json.dumps(SCHEMAS))
