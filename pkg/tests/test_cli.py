import json
import subprocess
import sys

import pytest

from petrace.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_eis_example(capsys):
    code, out, _ = run(capsys, "eis", "--weight", "4", "--terms", "5")
    assert code == 0
    series = json.loads(out)["series"]
    assert series["coeffs"] == [[0, "1/120"], [1, "2"], [2, "18"], [3, "56"], [4, "146"]]


def test_trace_zero_is_one(capsys):
    code, out, _ = run(capsys, "trace", "--k", "0", "--phi", "crank")
    assert code == 0 and json.loads(out)["series"]["coeffs"] == [[0, "1"]]


def test_crank_moments(capsys):
    code, out, _ = run(capsys, "crank-moments", "--k", "1", "--terms", "6", "--method", "lambert")
    coeffs = dict(json.loads(out)["series"]["coeffs"])
    assert code == 0 and coeffs[4] == "40"


def test_verify_moment_generating_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "theorem2", "--k", "3", "--terms", "20")
    assert code == 0 and json.loads(out)["pass"] is True


def test_verify_is_byte_identical(capsys):
    _, a, _ = run(capsys, "verify", "--suite", "torsional", "--terms", "6", "--zorder", "5")
    _, b, _ = run(capsys, "verify", "--suite", "torsional", "--terms", "6", "--zorder", "5")
    assert a == b and "wall_time" not in a


def test_timing_flag(capsys):
    _, out, _ = run(capsys, "verify", "--suite", "lemma42", "--timing")
    assert "wall_time" in json.loads(out)


def test_failing_verification_exit_code(capsys):
    # a radius-5 lattice cannot meet the 1e-3 tolerance
    code, out, _ = run(capsys, "lattice", "--k", "1", "--tau", "0,2", "--radius", "5", "--s", "1")
    assert code == 1 and json.loads(out)["pass"] is False


def test_usage_errors(capsys):
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys, "eis", "--weight", "4", "--bogus")[0] == 2
    code, _, err = run(capsys, "eis", "--weight", "3")
    assert code == 2 and "weight" in err
    code, _, err = run(capsys, "jacobi", "--divisor", "1@0,1/2;-1@0,1/3")
    assert code == 0
    code, _, err = run(capsys, "jacobi", "--divisor", "1@0,5/2")
    assert code == 2 and "lift" in err
    assert run(capsys, "lattice", "--tau", "0,0.3")[0] == 2


def test_jacobi_divisor(capsys):
    code, out, _ = run(capsys, "jacobi", "--divisor", "2@0,0;-1@0,1/2;-1@0,1/2+0,-1",
                       "--k", "2", "--terms", "6", "--zorder", "6")
    data = json.loads(out)
    assert code == 0 and data["reconstruction"]["passed"] is True
    assert data["G"]["1"]["coeffs"] == []


def test_jacobi_point(capsys):
    code, out, _ = run(capsys, "jacobi", "--point", "0,1/2", "--k", "2", "--terms", "3")
    data = json.loads(out)
    assert code == 0 and data["G"]["2"]["coeffs"][0] == [0, "-1/4"]


def test_text_format(capsys):
    code, out, _ = run(capsys, "eis", "--weight", "2", "--terms", "3", "--format", "text")
    assert code == 0 and "-1/12 + (2)*q^1 + (6)*q^2 + O(q^3)" in out


def test_dump_partitions(capsys):
    code, out, _ = run(capsys, "dump-partitions", "--k", "4")
    data = json.loads(out)
    assert data["count"] == 5 and [p["crank"] for p in data["partitions"]] == [4, 2, 0, -2, -4]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "petrace", "eis", "--weight", "6", "--terms", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and '"-1/252"' in res.stdout
