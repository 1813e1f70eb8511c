import csv
import json
import subprocess
import sys

import numpy as np
import pytest
from numpy.testing import assert_allclose

from rsfkit import io
from rsfkit.cli import RunConfig, main, run
from rsfkit.dynamics import RKEGenerator, evolve
from rsfkit.fields import ReducedField
from rsfkit.symplectic import check_heisenberg

DAMPING = {"type": "gaussian", "G": [[0, 0], [0, 0]], "C_re": [[0.6324555320336759, 0]], "C_im": [[0, 0.6324555320336759]]}
SQUEEZER = {"type": "gaussian", "G": [[1, 0], [0, -1]]}
RKE_DAMPING = {"type": "rke", "h": [[0]], "gamma_down": [[0.8]]}


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_check_damping(tmp_path, capsys):
    cfg = write(tmp_path, "c.json", {"generator": DAMPING})
    assert main(["check", "--config", cfg]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["schema"] == 1
    assert out["compatible"] is True
    assert out["comm_JG"] == 0


def test_check_squeezer_reports_but_succeeds(tmp_path, capsys):
    cfg = write(tmp_path, "c.json", {"generator": SQUEEZER})
    assert main(["check", "--config", cfg]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["compatible"] is False
    assert out["violations"] == ["[J,G] ≠ 0"]


def test_convert_squeezer_refused(tmp_path, capsys):
    cfg = write(tmp_path, "c.json", {"generator": SQUEEZER})
    assert main(["convert", "--config", cfg]) == 1
    assert "[J,G] ≠ 0" in capsys.readouterr().err


def test_convert_damping(tmp_path):
    out = tmp_path / "rke.json"
    cfg = write(tmp_path, "c.json", {"generator": DAMPING})
    assert main(["convert", "--config", cfg, "--out", str(out)]) == 0
    gen = io.generator_from_json(json.loads(out.read_text()))
    assert isinstance(gen, RKEGenerator)
    assert_allclose(gen.gamma_down, [[0.8]], atol=1e-15)


def test_convert_bogoliubov_path(tmp_path, capsys):
    cfg = write(tmp_path, "c.json", {"generator": {"type": "bogoliubov", "path": "amplification", "kappa": 1.0, "t": 0.5}})
    assert main(["convert", "--config", cfg]) == 0
    gen = io.generator_from_json(json.loads(capsys.readouterr().out))
    assert_allclose(gen.gamma_up, [[2.0]], atol=1e-10)


def test_evolve_rke_damping(tmp_path):
    out = tmp_path / "traj.csv"
    cfg = write(tmp_path, "c.json", {"generator": RKE_DAMPING, "initial_state": {"picture": "rsf", "r": [[1]]}})
    assert main(["evolve", "--config", cfg, "--t1", "1", "--out", str(out)]) == 0
    rows = list(csv.DictReader(out.open()))
    assert float(rows[-1]["t"]) == 1.0
    assert float(rows[-1]["r_re_0_0"]) == pytest.approx(0.4493, abs=1e-4)
    assert float(rows[-1]["r_re_0_0"]) == pytest.approx(np.exp(-0.8), abs=1e-8)
    assert {"s_v", "s_w"} <= set(rows[0])


def test_evolve_is_bit_identical(tmp_path):
    cfg = write(tmp_path, "c.json", {
        "generator": DAMPING, "initial_state": {"kind": "coherent", "alpha_re": [1.0], "alpha_im": [0.5]},
        "t1": 0.5, "dt": 0.01,
    })
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["evolve", "--config", cfg, "--out", str(a)]) == 0
    assert main(["evolve", "--config", cfg, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("picture", ["symplectic", "rsf"])
def test_evolve_rows_reingest(tmp_path, picture):
    out = tmp_path / "traj.csv"
    cfg = write(tmp_path, "c.json", {
        "generator": DAMPING, "initial_state": {"kind": "thermal", "nbar": [1.0]}, "t1": 0.3, "dt": 0.01,
    })
    assert main(["evolve", "--config", cfg, "--picture", picture, "--out", str(out)]) == 0
    traj = io.read_trajectory_csv(out)
    assert traj.picture == picture
    for state in traj.states:
        if picture == "symplectic":
            assert check_heisenberg(state, 1e-8).physical
        else:
            assert isinstance(state, ReducedField)
    r, _ = traj.rsf_arrays()
    assert_allclose(r[:, 0, 0].real, np.exp(-0.8 * traj.times), atol=1e-9)


def test_csv_round_trip_exact(tmp_path):
    traj = evolve(RKEGenerator([[1.0]], gamma_up=[[0.1]]), ReducedField([[0.3]], [0.2j]), 0.0, 0.2, 0.01)
    path = tmp_path / "t.csv"
    io.write_trajectory_csv(traj, path)
    back = io.read_trajectory_csv(path)
    assert np.array_equal(back.times, traj.times)
    assert np.array_equal(back.matrices, traj.matrices)
    assert np.array_equal(back.vectors, traj.vectors)


def test_evolve_rke_requires_rsf(tmp_path, capsys):
    cfg = write(tmp_path, "c.json", {"generator": RKE_DAMPING, "initial_state": {"kind": "vacuum"}})
    assert main(["evolve", "--config", cfg, "--picture", "symplectic"]) == 1
    assert "symplectic picture" in capsys.readouterr().err


def test_evolve_squeezer_in_rsf_refused(tmp_path, capsys):
    cfg = write(tmp_path, "c.json", {"generator": SQUEEZER, "initial_state": {"kind": "vacuum"}})
    assert main(["evolve", "--config", cfg, "--picture", "rsf"]) == 1
    assert "[J,G] ≠ 0" in capsys.readouterr().err


@pytest.mark.parametrize("dt, t1", [(0.0, 1.0), (0.01, 0.0)])
def test_evolve_grid_validation(tmp_path, dt, t1):
    cfg = write(tmp_path, "c.json", {"generator": RKE_DAMPING, "initial_state": {"r": [[1]]}})
    assert main(["evolve", "--config", cfg, "--dt", str(dt), "--t1", str(t1)]) == 1


def test_unphysical_initial_state(tmp_path, capsys):
    cfg = write(tmp_path, "c.json", {"generator": DAMPING, "initial_state": {"V": [[0.4, 0], [0, 0.4]]}})
    assert main(["evolve", "--config", cfg]) == 1
    assert "min eig" in capsys.readouterr().err


def test_entropy_with_oracle(tmp_path, capsys):
    cfg = write(tmp_path, "c.json", {"initial_state": {"kind": "thermal", "nbar": [1.0]}})
    assert main(["entropy", "--config", cfg, "--oracle"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["s_v"] == pytest.approx(2 * np.log(2), abs=1e-12)
    assert out["s_w"] == pytest.approx(1 + np.log(2), abs=1e-12)
    assert out["bound_ok"] is True
    assert out["oracle"]["abs_error"] < 1e-4


def test_demo_tmsv(capsys):
    assert main(["demo", "tmsv", "--squeezing", "0.5"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["erased"] is True
    assert out["tmsv"]["may_be_entangled"] is True
    assert out["separable_counterpart"]["may_be_entangled"] is False
    assert out["tmsv"]["standard_form"]["c_plus"] == pytest.approx(np.sinh(1) / 2)
    assert out["separable_counterpart"]["standard_form"]["c_minus"] == 0


def test_demo_gto_overrides(capsys):
    S = [[np.exp(0.5), 0], [0, np.exp(-0.5)]]
    assert main(["demo", "gto", "--params", json.dumps({"S": S, "dphi": 0.0})]) == 0
    assert json.loads(capsys.readouterr().out)["compatible"] is True
    assert main(["demo", "gto", "--params", json.dumps({"S": S, "dphi": 0.1})]) == 0
    assert json.loads(capsys.readouterr().out)["compatible"] is False


def test_demo_amplification(capsys):
    assert main(["demo", "amplification", "--params", '{"kappa": 1.0, "t": 0.3}']) == 0
    out = json.loads(capsys.readouterr().out)
    assert_allclose(out["via_bogoliubov"]["gamma_up_re"], out["direct"]["gamma_up_re"], atol=1e-10)


def test_demo_stabilizability(capsys):
    assert main(["demo", "stabilizability"]) == 0
    cases = json.loads(capsys.readouterr().out)["cases"]
    assert [(c["verdict_G"], c["verdict_IC"]) for c in cases] == [(False, True)] * 3


def test_bad_params_json(capsys):
    assert main(["demo", "gto", "--params", "{nope"]) == 1


def test_missing_config_is_io_error(tmp_path, capsys):
    assert main(["check", "--config", str(tmp_path / "missing.json")]) == 2
    assert "cannot read" in capsys.readouterr().err


def test_malformed_config_is_io_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{")
    assert main(["check", "--config", str(path)]) == 2


def test_unwritable_output(tmp_path):
    cfg = write(tmp_path, "c.json", {"generator": DAMPING})
    assert main(["check", "--config", cfg, "--out", str(tmp_path / "no" / "such" / "dir.json")]) == 2


def test_schema_version_checked(tmp_path, capsys):
    cfg = write(tmp_path, "c.json", {"generator": {**DAMPING, "schema": 2}})
    assert main(["check", "--config", cfg]) == 1
    assert "schema" in capsys.readouterr().err


def test_run_config_direct():
    assert run(RunConfig("check", generator=SQUEEZER)) == 0
    assert run(RunConfig("check")) == 1
    assert run(RunConfig("bogus")) == 1


def test_env_tolerance(tmp_path, monkeypatch, capsys):
    # G asymmetric by 1e-8 fails at the default tolerance, passes when loosened
    cfg = write(tmp_path, "c.json", {"generator": {"type": "gaussian", "G": [[1, 1e-8], [0, 1]]}})
    monkeypatch.delenv("RSFKIT_TOL", raising=False)
    assert main(["check", "--config", cfg]) == 1
    monkeypatch.setenv("RSFKIT_TOL", "1e-6")
    assert main(["check", "--config", cfg]) == 0


def test_module_entry_point(tmp_path):
    cfg = write(tmp_path, "c.json", {"generator": SQUEEZER})
    proc = subprocess.run([sys.executable, "-m", "rsfkit", "convert", "--config", cfg], capture_output=True, text=True)
    assert proc.returncode == 1
    assert "[J,G] ≠ 0" in proc.stderr
