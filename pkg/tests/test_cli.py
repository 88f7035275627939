import json
import subprocess
import sys

import pytest

from scattered_lab import cli
from scattered_lab.scatter_criteria import ScatterVerdict


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out) if out.strip() else None


# -- field-info -----------------------------------------------------------------------

def test_field_info(capsys):
    code, rep = run_json(capsys, "field-info", "--p", "3", "--e", "1")
    assert code == 0
    assert len(rep["modulus"]) == 7 and rep["degree"] == 6
    assert rep["irreducible"] and rep["generator_primitive"]
    code, rep = run_json(capsys, "field-info", "--p", "2", "--e", "2")
    assert code == 0 and len(rep["modulus"]) == 13


@pytest.mark.parametrize(
    "argv",
    [
        ["field-info", "--p", "4"],
        ["field-info"],
        ["field-info", "--p", "2", "--modulus", "1,0,0,0,0,0,1"],
        ["scattered", "--p", "3"],
        ["scattered", "--p", "3", "--b", "1,2"],
        ["scattered", "--p", "3", "--b", "0,0,0,0,0,0"],
        ["scattered", "--p", "3", "--b", "5,0,0,0,0,0"],
        ["scattered", "--p", "3", "--N", "g^1"],
        ["gamma", "--q", "6"],
        ["mrd", "--p", "3"],
        ["mrd", "--p", "3", "--b", "g^1", "--sample", "-1"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert cli.main(argv) == 2
    assert "error" in capsys.readouterr().err


# -- scattered ----------------------------------------------------------------------------

def test_scattered_examples(capsys):
    code, rep = run_json(capsys, "scattered", "--p", "3", "--N", "1,0,0,0,0,0")
    assert code == 0 and rep["scattered"] is False and rep["route"] == "closed_form_odd"
    code, rep = run_json(capsys, "scattered", "--p", "3", "--sweep")
    assert code == 0 and rep["scattered_count"] == 6 and len(rep["verdicts"]) == 26
    code, rep = run_json(capsys, "scattered", "--p", "2", "--b", "g^5", "--oracle")
    assert code == 0 and rep["scattered"] is False and rep["agree"]
    assert "witness_m" in rep["oracle"]


def test_scattered_reports_field(capsys):
    _, rep = run_json(capsys, "scattered", "--p", "2", "--e", "2", "--b", "g^7")
    assert rep["field"]["p"] == 2 and rep["field"]["e"] == 2
    assert len(rep["b"]) == 12 and len(rep["N"]) == 12


def test_oracle_disagreement_exits_1(capsys, monkeypatch):
    def liar(b):
        return ScatterVerdict(True, "oracle", b.tower.norm_q6_q3(b), b)

    monkeypatch.setattr(cli, "brute_is_scattered", liar)
    code, rep = run_json(capsys, "scattered", "--p", "3", "--N", "1,0,0,0,0,0", "--oracle")
    assert code == 1 and rep["agree"] is False

    import scattered_lab.census as census

    monkeypatch.setattr(census, "brute_is_scattered", liar)
    assert cli.main(["gamma", "--q", "3", "--oracle", "--serial"]) == 1
    assert "mismatch" in capsys.readouterr().err


# -- sweeps ---------------------------------------------------------------------------------

def test_gamma_rows(capsys):
    code, rep = run_json(capsys, "gamma", "--q", "2,3,4,5,7,8,9", "--serial")
    assert code == 0
    assert [r["size"] for r in rep["rows"]] == [0, 6, 21, 46, 142, 219, 318]
    assert all(r["match"] for r in rep["rows"])


def test_gamma_parallel_matches_serial(capsys):
    _, serial = run(capsys, "gamma", "--q", "3,4,5", "--serial")
    _, parallel = run(capsys, "gamma", "--q", "3,4,5", "--workers", "2")
    assert serial == parallel


def test_gamma_mismatch_exits_1(capsys, monkeypatch):
    real = cli.enumerate_gamma

    def off_by_one(ctx, oracle=False):
        rep = real(ctx, oracle)
        rep.gamma = rep.gamma[1:]
        return rep

    monkeypatch.setattr(cli, "enumerate_gamma", off_by_one)
    code, rep = run_json(capsys, "gamma", "--q", "4", "--serial")
    assert code == 1 and rep["rows"][0]["match"] is False


def test_cubics_and_orbits(capsys):
    code, rep = run_json(capsys, "cubics", "--q", "4", "--serial")
    row = rep["rows"][0]
    assert code == 0 and row["match"]
    assert (row["gamma0"], row["gamma1"], row["gamma2"], row["gamma3"]) == (7, 8, 5, 4)
    code, rep = run_json(capsys, "orbits", "--q", "4,8", "--serial")
    assert code == 0
    assert [r["orbit_count"] >= r["lower_bound_ceil"] for r in rep["rows"]] == [True, True]


def test_table_format(capsys):
    code, out = run(capsys, "gamma", "--q", "3,4", "--format", "table", "--serial")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].split()[:2] == ["q", "size"] and len(lines) == 3


def test_mrd_scan(capsys):
    code, rep = run_json(capsys, "mrd", "--p", "3", "--scan", "3", "--sample", "2000")
    assert code == 0 and len(rep["reports"]) == 3
    assert all(r["is_mrd"] and r["scattered"] for r in rep["reports"])


# -- determinism ---------------------------------------------------------------------------

def test_identical_runs_are_byte_identical():
    argv = [sys.executable, "-m", "scattered_lab", "scattered", "--p", "2", "--e", "2",
            "--b", "g^3", "--oracle"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and b"witness_m" in first
