import csv
import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from fuzzball.cli import main
from fuzzball.grvv import GrvvSolution
from fuzzball.matcore import matrix_from_json, matrix_to_json


def run(args):
    return main(args)


def test_gen_grvv(tmp_path):
    out = tmp_path / "g.json"
    assert run(["gen", "grvv", "--n", "2", "--out", str(out)]) == 0
    sol = GrvvSolution.from_json(json.loads(out.read_text()))
    assert_allclose(sol.g1, np.diag([0.0, 1.0]))
    assert_allclose(sol.g2, np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_gen_grvv_invalid_size(capsys):
    assert run(["gen", "grvv", "--n", "0"]) == 2
    assert "error" in capsys.readouterr().err


def test_gen_su2_partition(tmp_path):
    out = tmp_path / "rep.json"
    assert run(["gen", "su2", "--dims", "2,3", "--out", str(out)]) == 0
    obj = json.loads(out.read_text())
    assert obj["partition"] == [2, 3]
    assert obj["j3"]["rows"] == 5


def test_gen_grvv_dressed_partition(tmp_path):
    out = tmp_path / "d.json"
    assert run(["gen", "grvv", "--partition", "2,3", "--dress", "7", "--out", str(out)]) == 0
    sol = GrvvSolution.from_json(json.loads(out.read_text()))
    assert sol.dressed and sol.partition == (2, 3)


def test_gen_gamma(tmp_path):
    out = tmp_path / "gamma.json"
    assert run(["gen", "gamma", "--group", "so9", "--out", str(out)]) == 0
    obj = json.loads(out.read_text())
    assert len(obj["matrices"]) == 9
    g = matrix_from_json(obj["matrices"][0])
    assert g.shape == (16, 16)


def test_verify_suite_passes(tmp_path):
    out = tmp_path / "report.json"
    code = run(["verify", "--suite", "grvv", "--n-list", "2,4", "--out", str(out)])
    assert code == 0
    report = json.loads(out.read_text())
    assert report["passed"] is True
    assert all(r["pass"] for r in report["results"])


def test_verify_unachievable_tolerance(tmp_path):
    out = tmp_path / "report.json"
    code = run(
        ["verify", "--suite", "grvv", "--n-list", "16", "--tol", "1e-30", "--out", str(out)]
    )
    assert code == 1


def test_verify_reports_are_deterministic(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for out in (a, b):
        assert (
            run(["verify", "--suite", "covariance", "--n-list", "3", "--seed", "5", "--out", str(out)])
            == 0
        )
    assert a.read_text() == b.read_text()


def test_verify_geometry_grid(tmp_path):
    out = tmp_path / "geo.json"
    code = run(
        ["verify", "--suite", "geometry", "--grid", "32x64", "--n-list", "2", "--out", str(out)]
    )
    assert code == 0
    report = json.loads(out.read_text())
    names = {r["name"] for r in report["results"]}
    assert "hopf_section_roundtrip" in names and "clifford_so9" in names


def test_spectrum_laplacian(tmp_path):
    out = tmp_path / "s.csv"
    assert run(["spectrum", "laplacian", "--n", "3", "--out", str(out)]) == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    assert rows[0] == ["eigenvalue", "multiplicity", "family"]
    mults = [int(r[1]) for r in rows[1:]]
    assert mults == [1, 3, 5]
    assert abs(float(rows[2][0]) - 8.0) < 1e-9


def test_spectrum_kinetic_bound(capsys):
    assert run(["spectrum", "kinetic", "--n", "40"]) == 2
    assert "capped" in capsys.readouterr().err


def test_converge_commutator(tmp_path):
    out = tmp_path / "c.csv"
    assert run(["converge", "commutator", "--n-list", "3,99", "--out", str(out)]) == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    assert float(rows[1][1]) == pytest.approx(0.5, abs=1e-13)
    assert float(rows[2][1]) == pytest.approx(0.02, abs=1e-13)


def test_converge_modes(tmp_path):
    out = tmp_path / "m.csv"
    assert (
        run(["converge", "modes", "--n-list", "4,8,16", "--l", "1", "--m", "0", "--out", str(out)])
        == 0
    )
    rows = list(csv.reader(out.read_text().splitlines()))
    errs = [float(r[3]) for r in rows[1:]]
    assert errs[0] > errs[1] > errs[2]


def test_decompose_identity_fluctuation(tmp_path):
    gfile = tmp_path / "g.json"
    assert run(["gen", "grvv", "--n", "3", "--out", str(gfile)]) == 0
    sol = GrvvSolution.from_json(json.loads(gfile.read_text()))
    r1 = tmp_path / "r1.json"
    r2 = tmp_path / "r2.json"
    r1.write_text(json.dumps(matrix_to_json(sol.g1)))
    r2.write_text(json.dumps(matrix_to_json(sol.g2)))
    out = tmp_path / "modes.json"
    power = tmp_path / "p.csv"
    code = run(
        [
            "decompose",
            "--solution",
            str(gfile),
            "--matrix",
            f"{r1},{r2}",
            "--out",
            str(out),
            "--power-csv",
            str(power),
        ]
    )
    assert code == 0
    modes = json.loads(out.read_text())
    nonzero = [(l, m) for l, m, re, im in modes["r"] if abs(complex(re, im)) > 1e-10]
    assert nonzero == [(0, 0)]
    assert all(abs(complex(re, im)) < 1e-10 for *_rest, re, im in modes["s"])
    assert all(abs(complex(re, im)) < 1e-10 for _a, _k, re, im in modes["t"])
    rows = list(csv.reader(power.read_text().splitlines()))
    assert rows[0] == ["l", "m", "r_power", "s_power"]


def test_verify_respects_thread_cap(tmp_path, monkeypatch):
    monkeypatch.setenv("FUZZBALL_THREADS", "1")
    out = tmp_path / "r.json"
    assert run(["verify", "--suite", "u2", "--n-list", "2,3", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["passed"] is True
