import csv
import io
import json
import subprocess
import sys

import pytest

from avgroups.abgroups import GroupShape
from avgroups.cli import run
from avgroups.exactpoly import IntPolynomial
from avgroups.polygons import ConvexPolygon


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


def test_classify_example():
    res = call_json("classify", "--q", "3", "--poly", "9,0,0,0,1", "--group", "10")
    assert res["verdict"] == "yes"
    assert [p["ell"] for p in res["primes"]] == [2, 5]
    assert set(res["primes"][0]) == {"ell", "case", "ok", "detail"}


def test_no_verdict_exits_zero():
    res = call_json("classify", "--q", "4", "--poly", "16,32,24,8,1", "--group", "81")
    assert res["verdict"] == "no"


def test_enumerate_example():
    assert call_json("enumerate", "--q", "4", "--poly", "16,32,24,8,1") == {"yes": [[3, 3, 3, 3]], "unknown": []}
    res = call_json("enumerate", "--q", "4", "--poly", "64,-96,84,-52,21,-6,1")
    assert res == {"yes": [[4, 4]], "unknown": [[2, 2, 2, 2]]}


def test_validate_example():
    res = call_json("validate", "--q", "2", "--poly", "2,-3,1")
    assert res["valid"] is False and "root off circle" in res["reason"]
    assert call_json("validate", "--q", "2", "--poly", "2,-1,1") == {"valid": True, "g": 1, "reason": ""}


def test_shape_output_round_trips():
    res = call_json("shape", "--q", "4", "--poly", "16,-20,12,-5,1")
    assert res["case"] == "mixed-supersingular"
    polys = [(IntPolynomial.parse(p["poly"]), p["mult"]) for p in res["parts"]]
    assert polys == [(IntPolynomial((4, -1, 1)), 1), (IntPolynomial((-2, 1)), 2)]


def test_polygon_commands_round_trip():
    res = call_json("polygon", "newton", "--ell", "2", "--poly", "4,-1,1")
    assert res == {"vertices": [[0, "2/1"], [1, "0/1"], [2, "0/1"]]}
    ConvexPolygon.from_json(res["vertices"])
    res = call_json("polygon", "hodge", "--exponents", "0,0,1,3")
    assert [x for x, _ in res["vertices"]] == [0, 1, 2, 4]


def test_oracle_lattice():
    res = call_json("oracle", "lattice", "--q", "5", "--poly", "25,-20,14,-4,1", "--ell", "2")
    assert res == {"shapes": [[0, 0, 2, 2], [0, 1, 1, 2], [1, 1, 1, 1]], "depth": 6}


def test_oracle_curves_crosscheck():
    res = call_json("oracle", "curves", "--q", "3", "--genus", "1", "--crosscheck")
    assert res["mismatches"] == []
    assert sum(r["count"] for r in res["curves"]) == 162
    for r in res["curves"]:
        IntPolynomial.parse(r["poly"])
        GroupShape.parse(r["group"])
    res = call_json("oracle", "curves", "--q", "3", "--genus", "2", "--sample", "20", "--crosscheck")
    assert res["mismatches"] == []


@pytest.mark.parametrize("argv", [
    ("classify", "--q", "3", "--poly", "9,0,z,0,1", "--group", "10"),
    ("classify", "--q", "3", "--poly", "9,0,0,0,1", "--group", "2,q"),
    ("classify", "--q", "6", "--poly", "9,0,0,0,1", "--group", "10"),
    ("enumerate", "--q", "2", "--poly", "2,-3,1"),
    ("polygon", "hodge", "--exponents", "0,-1"),
    ("oracle", "curves", "--q", "11", "--genus", "1"),
    ("nonsense",),
])
def test_invalid_input_exit_code(argv):
    code, out, err = call(*argv)
    assert code == 2 and out == ""


def test_parse_errors_carry_positions():
    _, _, err = call("classify", "--q", "3", "--poly", "9,0,z,0,1", "--group", "10")
    assert "position 4" in err


def test_resource_cap_exit_code(monkeypatch):
    monkeypatch.setenv("AVG_MAX_ENUM", "5")
    code, _, err = call("enumerate", "--q", "3", "--poly", "9,0,0,0,1")
    assert code == 3 and "cap" in err
    code, _, _ = call("oracle", "lattice", "--q", "3", "--poly", "9,0,0,0,1", "--ell", "2", "--depth", "40")
    assert code == 3


def test_csv_output():
    code, out, _ = call("--format", "csv", "enumerate", "--q", "4", "--poly", "16,32,24,8,1")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows == [["verdict", "group"], ["yes", "3,3,3,3"]]
    code2, out2, _ = call("enumerate", "--q", "4", "--poly", "16,32,24,8,1", "--format", "csv")
    assert out2 == out


def test_output_is_deterministic():
    argv = ("oracle", "curves", "--q", "4", "--genus", "1", "--crosscheck")
    assert call(*argv) == call(*argv)


def test_report_writes_figures(tmp_path):
    code, out, err = call("--format", "csv", "report", "--q", "4", "--poly", "16,-20,12,-5,1",
                          "--figures", str(tmp_path))
    assert code == 0, err
    assert (tmp_path / "newton_hodge_l2.png").stat().st_size > 0
    assert out.splitlines()[0] == "group,verdict,ell,exponents"


def test_help_documents_grammar(capsys):
    assert call("--help")[0] == 0
    text = capsys.readouterr().out
    assert "ascending integer coefficients" in text and "Z/2+Z/6" in text


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "avgroups.cli", "validate", "--q", "3", "--poly", "9,0,0,0,1"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["g"] == 2
