import json
import math

import numpy as np
import pytest
from click.testing import CliRunner

from oscigen.cli import main
from oscigen.probtable import ProbTable


@pytest.fixture
def runner():
    return CliRunner()


def test_table_identity_at_zero_drive(runner):
    result = runner.invoke(main, ["table", "forced", "--nu", "0", "--max", "4"])
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert lines[0] == "m\\n,0,1,2,3"
    got = np.array([[float(x) for x in ln.split(",")[1:]] for ln in lines[1:]])
    assert np.array_equal(got, np.eye(4))


def test_table_csv_cells_round_trip(runner):
    result = runner.invoke(
        main, ["table", "parametric", "--rho", "0.37", "--max", "6"]
    )
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    got = np.array([[float(x) for x in ln.split(",")[1:]] for ln in lines[1:]])
    from oscigen.parametric import param_prob_table

    want = param_prob_table(0.37, size=6).values
    assert np.array_equal(got, want)  # 17 significant digits: bit-exact


def test_table_antidiagonal_spot(runner):
    result = runner.invoke(
        main, ["table", "parametric", "--rho", "0.19", "--max", "4"]
    )
    lines = result.output.strip().splitlines()
    got = np.array([[float(x) for x in ln.split(",")[1:]] for ln in lines[1:]])
    s2 = got[0][2] + got[1][1] + got[2][0]
    assert s2 == pytest.approx(0.9, abs=1e-14)


def test_table_singular_vacuum_entry(runner):
    result = runner.invoke(
        main,
        ["table", "singular", "--rho", "0.5", "--j", "-0.25", "--max", "4"],
    )
    assert result.exit_code == 0
    first = result.output.strip().splitlines()[1].split(",")[1]
    assert first == "0.70710678118654757"


def test_table_json_round_trip(runner, tmp_path):
    out = tmp_path / "t.json"
    result = runner.invoke(
        main,
        [
            "table", "forced", "--nu", "1.5", "--max", "6",
            "--mode", "exact", "--format", "json", "--output", str(out),
        ],
    )
    assert result.exit_code == 0
    doc = json.loads(out.read_text())
    table = ProbTable.from_json_dict(doc)
    from oscigen.forced import forced_prob_table

    want = forced_prob_table(1.5, size=6, mode="exact")
    assert np.array_equal(table.values, want.values)
    assert np.array_equal(table.row_tails, want.row_tails)
    assert table.symbolic.entries == want.symbolic.entries
    assert doc["symbolic"]["prefactor"] == "exp(-nu)"
    assert doc["symbolic"]["entries"][1][1] == ["1/1", "-2/1", "1/1"]


def test_table_invalid_parameters_exit_2(runner):
    cases = [
        ["table", "forced", "--max", "4"],
        ["table", "forced", "--nu", "-1", "--max", "4"],
        ["table", "parametric", "--rho", "1.2", "--max", "4"],
        ["table", "singular", "--rho", "0.5", "--max", "4"],
        ["table", "singular", "--rho", "0.5", "--j", "0.2", "--max", "4"],
        ["table", "singular", "--rho", "0.5", "--j", "-0.25", "--mode", "exact"],
    ]
    for args in cases:
        result = runner.invoke(main, args)
        assert result.exit_code == 2, args
        assert "error" in result.stderr
        assert result.stdout == ""


def test_window_cap_environment(runner, monkeypatch):
    monkeypatch.setenv("OSCIGEN_MAX_WINDOW", "8")
    result = runner.invoke(main, ["table", "forced", "--nu", "1", "--max", "32"])
    assert result.exit_code == 2
    assert "cap" in result.stderr


def test_excite_constant_profile(runner, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"kind": "constant", "omega": 1.0}))
    result = runner.invoke(main, ["excite", "--profile", str(path), "--what", "rho"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["rho"] == 0.0
    assert doc["mean_n0"] == 0.0


def test_excite_sudden_step(runner, tmp_path):
    path = tmp_path / "s.json"
    path.write_text(
        json.dumps(
            {"kind": "sudden_step", "omega_minus": 1.0, "omega_plus": 2.0, "t_jump": 0.0}
        )
    )
    result = runner.invoke(main, ["excite", "--profile", str(path), "--what", "rho"])
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["rho"] == pytest.approx(1.0 / 9.0, abs=1e-12)
    assert doc["wronskian_residual"] < 1e-12


def test_excite_zero_force(runner, tmp_path):
    path = tmp_path / "z.json"
    path.write_text(json.dumps({"kind": "gaussian", "f0": 0.0, "tau": 1.0, "t0": 0.0}))
    result = runner.invoke(
        main, ["excite", "--profile", str(path), "--what", "nu", "--omega", "1.0"]
    )
    assert result.exit_code == 0
    assert json.loads(result.output)["nu"] == 0.0


def test_excite_gaussian_value(runner, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"kind": "gaussian", "f0": 1.0, "tau": 1.0, "t0": 0.0}))
    result = runner.invoke(
        main, ["excite", "--profile", str(path), "--what", "nu", "--omega", "1.0"]
    )
    doc = json.loads(result.output)
    assert doc["nu"] == pytest.approx(math.pi * math.exp(-0.5) / 2.0, abs=1e-12)


def test_excite_parse_failure_exit_2(runner, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{ nope")
    result = runner.invoke(main, ["excite", "--profile", str(path), "--what", "rho"])
    assert result.exit_code == 2
    assert "error" in result.stderr


def test_excite_wrong_family_exit_2(runner, tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"kind": "constant", "omega": 1.0}))
    result = runner.invoke(main, ["excite", "--profile", str(path), "--what", "nu"])
    assert result.exit_code == 2


def test_verify_forced_suite_json(runner):
    result = runner.invoke(
        main, ["verify", "--suite", "forced", "--format", "json"]
    )
    assert result.exit_code == 0
    doc = json.loads(result.output)
    assert doc["summary"]["fail"] == 0
    assert doc["summary"]["pass"] >= 8
    ids = {c["id"] for c in doc["checks"]}
    assert "forced.sum-rules.exact" in ids


def test_verify_reports_second_integral_without_failing(runner):
    result = runner.invoke(
        main, ["verify", "--suite", "parametric", "--format", "json"]
    )
    assert result.exit_code == 0
    doc = json.loads(result.output)
    reported = [c for c in doc["checks"] if c["status"] == "reported-only"]
    assert len(reported) == 1
    assert reported[0]["id"] == "param.weighted-second.reported"
    assert "mismatch" in reported[0]["note"]
    assert doc["summary"]["fail"] == 0


def test_verify_text_output_lines(runner):
    result = runner.invoke(main, ["verify", "--suite", "excitation"])
    assert result.exit_code == 0
    assert "[PASS]" in result.output
    assert "passed" in result.output.splitlines()[-1]
