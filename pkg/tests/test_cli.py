import json
import subprocess
import sys

import pytest

from cherednik.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_describe_h3(capsys):
    code, out, _ = run(capsys, "describe", "--group", "h3")
    assert code == 0
    rep = json.loads(out)
    assert rep["order"] == 120
    assert rep["reflections"] == 15
    assert len(rep["hyperplane_orbits"]) == 1
    assert len(rep["strata"]) == 6


def test_describe_b2_and_cyclic(capsys):
    rep = json.loads(run(capsys, "describe", "--group", "grpn:2,1,2")[1])
    assert rep["order"] == 8 and len(rep["hyperplane_orbits"]) == 2
    rep = json.loads(run(capsys, "describe", "--group", "cyclic:2")[1])
    assert rep["order"] == 2 and rep["coordinates"] == ["x1"]
    code, out, _ = run(capsys, "describe", "--group", '{"kind": "coxeter", "matrix": [[1, 3], [3, 1]]}', "--format", "text")
    assert code == 0 and out.startswith("order 6")


def test_schur_text(capsys):
    code, out, _ = run(capsys, "schur", "--group", "h3", "--format", "text")
    assert code == 0
    assert out.strip() == "Phi2^3 Phi3 Phi5 Phi6 Phi10 (x1)"


def test_schur_table_rows(capsys):
    code, out, _ = run(capsys, "schur", "--table-group", "G4", "--format", "text")
    assert code == 0
    assert out.splitlines()[0].startswith("G4 | principal | ")


def test_qindex(capsys):
    code, out, _ = run(capsys, "qindex", "--group", "a2")
    rep = json.loads(out)
    assert code == 0 and len(rep["q_indices"]) == 3


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["--group", "grpn:1,1,3", "--c", "1/3"], "true"),
        (["--group", "a2", "--c", "1/2"], "false"),
        (["--group", "cyclic:2", "--c", "3/2"], "true"),
        (["--group", "grpn:2,1,2", "--gr1n", '{"c0": "1/2", "d": [0, "-1/2"]}'], None),
        (["--group", "grpn:2,1,2", "--c", '{"x.1": "1/2", "y.1": "1/2"}'], None),
    ],
)
def test_finite_dim(capsys, argv, expected):
    code, out, _ = run(capsys, "finite-dim", *argv, "--format", "text")
    assert code == 0
    assert out.strip() in ("true", "false")
    if expected:
        assert out.strip() == expected


def test_support_both_routes(capsys):
    code, out, _ = run(capsys, "support", "--group", "a2", "--c", "1/2", "--route", "both", "--degree", "5")
    rep = json.loads(out)
    assert code == 0
    assert set(rep) == {"schur", "exponential"}
    status = {s["name"]: s["status"] for s in rep["exponential"]["strata"]}
    assert status["1"] == "excluded (certified, degree 3)"
    code, out, _ = run(capsys, "support", "--group", "a2", "--c", "1/2", "--route", "both", "--format", "text")
    assert "[schur] finite dimensional: false" in out


def test_wexp_symbolic_text(capsys):
    code, out, _ = run(capsys, "wexp", "--group", "cyclic:2", "--lambda", "1", "--degree", "4", "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert lines[:4] == ["degree 1: 1 - 2*c_x1", "degree 2: 2", "degree 3: 3 - 2*c_x1", "degree 4: 4"]


def test_wexp_numeric(capsys):
    code, out, _ = run(capsys, "wexp", "--group", "a2", "--lambda", "2,-1", "--c", "1/5", "--degree", "3")
    rep = json.loads(out)
    assert code == 0 and rep["coefficients"][0] == {"monomial": [0, 0], "coefficient": "1/1"}
    code, out, _ = run(capsys, "wexp", "--group", "a2", "--lambda", "2,-1", "--c", "1/2", "--degree", "4")
    assert json.loads(out)["singular_degree"] == 3


@pytest.mark.parametrize(
    "argv, code",
    [
        (["describe", "--group", "zz"], 2),
        (["describe"], 2),
        (["finite-dim", "--group", "a2"], 2),
        (["finite-dim", "--group", "a2", "--c", "x"], 2),
        (["finite-dim", "--group", "grpn:3,3,2", "--c", "1/2"], 3),
        (["wexp", "--group", "a2", "--lambda", "1"], 2),
        (["schur", "--schur-table", "/nonexistent/table.txt"], 2),
        (["describe", "--group", "a2", "--degree", "0"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err


def test_undecidable_message(capsys):
    _, _, err = run(capsys, "finite-dim", "--group", "grpn:3,3,2", "--c", "1/2")
    assert err.startswith("undecidable")


def test_byte_identical_reruns():
    cmd = [sys.executable, "-m", "cherednik.cli", "support", "--group", "grpn:2,1,2", "--c", "1/2", "--route", "both"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
