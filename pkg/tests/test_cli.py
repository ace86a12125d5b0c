"""Command line: parsing, file outputs, manifests, exit codes, determinism."""

import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

import periodicwalk.core as core
from periodicwalk.cli import (
    EXIT_INVARIANT,
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    RunConfig,
    UsageError,
    main,
    parse_args,
    run,
)


def read_rows(path: Path) -> list[list[str]]:
    return [line.split(",") for line in path.read_text().strip().split("\n")]


def test_parse_simulate():
    config = parse_args(["simulate", "--q", "4", "--theta", "0.5236", "--steps", "100", "--out", "dist.csv"])
    assert config.command == "simulate"
    assert config.q == 4
    assert config.theta == 0.5236
    assert config.steps == 100
    assert config.out == Path("dist.csv")


def test_parse_sweep_period_range_and_default_out():
    config = parse_args(["sweep-period", "--theta", "1.0472", "--q", "1:10", "--steps", "200"])
    assert config.command == "sweep-period"
    assert config.q == tuple(range(1, 11))
    assert config.theta == 1.0472
    assert config.steps == 200
    assert config.out == Path("sweep-period.csv")


def test_parse_defaults():
    config = parse_args(["simulate", "--q", "3", "--theta", "1.0"])
    assert config.steps == 200
    assert config.out == Path("simulate.csv")
    config = parse_args(["sweep-period", "--theta", "1.0"])
    assert config.q == tuple(range(1, 11))


def test_parse_theta_pi_scaling():
    config = parse_args(["simulate", "--q", "1", "--theta-pi", "0.25"])
    assert abs(config.theta - math.pi / 4) < 1e-15


def test_parse_theta_grid():
    config = parse_args(["sweep-theta", "--q", "2", "--theta", "0:1:5"])
    assert config.theta == (0.0, 0.25, 0.5, 0.75, 1.0)
    config = parse_args(["sweep-theta", "--q", "2", "--theta-pi", "0:2:49"])
    assert len(config.theta) == 49
    assert abs(config.theta[-1] - 2 * math.pi) < 1e-12


def test_parse_theta_default_grids():
    config = parse_args(["sweep-theta", "--q", "2"])
    assert len(config.theta) == 49
    assert config.theta[0] == 0.0
    config = parse_args(["check-q1"])
    assert len(config.theta) == 47
    assert abs(config.theta[0] - math.pi / 24) < 1e-12


def test_parse_steps_list_forms():
    assert parse_args(["sweep-steps", "--q", "1", "--theta", "1", "--steps", "10"]).steps == (10,)
    assert parse_args(["sweep-steps", "--q", "1", "--theta", "1", "--steps", "10,20,30"]).steps == (10, 20, 30)
    assert parse_args(["sweep-steps", "--q", "1", "--theta", "1", "--steps", "50:54"]).steps == (50, 51, 52, 53, 54)


@pytest.mark.parametrize(
    "argv",
    [
        ["simulate", "--q", "0", "--theta", "1"],
        ["simulate", "--theta", "1"],
        ["simulate", "--q", "4"],
        ["simulate", "--q", "4", "--theta", "1", "--theta-pi", "1"],
        ["simulate", "--q", "4", "--theta", "abc"],
        ["simulate", "--q", "4", "--theta", "1", "--steps", "-3"],
        ["simulate", "--q", "4", "--theta", "1:2"],
        ["simulate", "--q", "4", "--theta", "1", "--frobnicate"],
        ["sweep-steps", "--q", "1", "--theta", "1"],
        ["sweep-steps", "--q", "1", "--theta", "1", "--steps", "0"],
        ["sweep-steps", "--q", "1", "--theta", "1", "--steps", "9:5"],
        ["sweep-theta", "--q", "2", "--theta", "0:1:1"],
        ["sweep-theta", "--q", "2", "--theta", "0:1:2:3"],
        ["check-q1", "--steps", "50"],
        ["frobnicate"],
        [],
    ],
)
def test_parse_usage_errors(argv):
    with pytest.raises(UsageError):
        parse_args(argv)
    assert main(argv) == EXIT_USAGE


def test_run_simulate_outputs(tmp_path):
    out = tmp_path / "dist.csv"
    code = main(["simulate", "--q", "4", "--theta-pi", "0.16666666666666666", "--steps", "100", "--out", str(out)])
    assert code == EXIT_OK

    rows = read_rows(out)
    assert rows[0] == ["position", "probability"]
    assert len(rows) == 1 + 201
    positions = [int(r[0]) for r in rows[1:]]
    assert positions == list(range(-100, 101))
    probs = [float(r[1]) for r in rows[1:]]
    assert abs(sum(probs) - 1.0) < 1e-12

    manifest = json.loads((tmp_path / "dist.csv.manifest.json").read_text())
    assert manifest["command"] == "simulate"
    assert manifest["config"]["q"] == 4
    assert manifest["config"]["steps"] == 100
    assert manifest["rows"] == 201
    assert manifest["elapsed_seconds"] >= 0.0
    assert "norm_drift_tol" in manifest["thresholds"]
    assert "q1_law_residual_ceiling" in manifest["thresholds"]
    assert manifest["tool"]["name"] == "periodicwalk"


def test_run_sweep_steps_ballistic_row(tmp_path):
    out = tmp_path / "s.csv"
    code = main(["sweep-steps", "--q", "1", "--theta-pi", "0.5", "--steps", "10", "--out", str(out)])
    assert code == EXIT_OK
    rows = read_rows(out)
    assert rows[0] == ["n", "sigma"]
    assert len(rows) == 2
    assert rows[1][0] == "10"
    assert abs(float(rows[1][1]) - 10.0) < 1e-10


def test_run_sweep_theta_outputs(tmp_path):
    out = tmp_path / "t.csv"
    code = main(["sweep-theta", "--q", "2", "--theta", "0.4:1.2:3", "--steps", "50", "--out", str(out)])
    assert code == EXIT_OK
    rows = read_rows(out)
    assert rows[0] == ["theta", "sigma"]
    assert [float(r[0]) for r in rows[1:]] == [0.4, 0.8, 1.2]


def test_run_sweep_period_outputs(tmp_path):
    out = tmp_path / "p.csv"
    code = main(["sweep-period", "--q", "2:5", "--theta", "1.0472", "--steps", "50", "--out", str(out)])
    assert code == EXIT_OK
    rows = read_rows(out)
    assert rows[0] == ["q", "inv_q", "sigma"]
    assert [int(r[0]) for r in rows[1:]] == [2, 3, 4, 5]
    for r in rows[1:]:
        assert abs(float(r[1]) - 1.0 / int(r[0])) < 1e-15


def test_run_check_q1_outputs(tmp_path):
    out = tmp_path / "c.csv"
    code = main(["check-q1", "--theta-pi", "0.5", "--steps", "100", "--out", str(out)])
    assert code == EXIT_OK
    rows = read_rows(out)
    assert rows[0] == ["theta", "sigma2_over_N2", "law", "residual"]
    assert len(rows) == 2
    assert float(rows[1][3]) < 1e-12

    manifest = json.loads((tmp_path / "c.csv.manifest.json").read_text())
    assert manifest["config"]["q"] == 1


def test_cli_runs_are_byte_identical(tmp_path):
    args = ["simulate", "--q", "3", "--theta", "0.9", "--steps", "60"]
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    assert main(args + ["--out", str(out_a)]) == EXIT_OK
    assert main(args + ["--out", str(out_b)]) == EXIT_OK
    assert out_a.read_bytes() == out_b.read_bytes()
    assert out_a.read_bytes().endswith(b"\n")
    assert b"\r" not in out_a.read_bytes()


def test_exit_code_io_error(tmp_path):
    out = tmp_path / "no" / "such" / "dir" / "x.csv"
    code = main(["simulate", "--q", "1", "--theta", "1", "--steps", "5", "--out", str(out)])
    assert code == EXIT_IO


def test_exit_code_invariant_violation(tmp_path, monkeypatch):
    # force the norm gate shut so any evolution trips it
    monkeypatch.setattr(core, "NORM_DRIFT_TOL", -1.0)
    out = tmp_path / "x.csv"
    code = main(["simulate", "--q", "1", "--theta", "1", "--steps", "5", "--out", str(out)])
    assert code == EXIT_INVARIANT
    assert not out.exists()


def test_run_accepts_handmade_config(tmp_path):
    config = RunConfig(
        command="simulate",
        q=2,
        theta=math.pi / 3,
        steps=20,
        out=tmp_path / "hand.csv",
    )
    assert run(config) == EXIT_OK
    assert (tmp_path / "hand.csv").exists()


def test_module_entry_point(tmp_path):
    out = tmp_path / "m.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "periodicwalk", "simulate", "--q", "2", "--theta", "1.0", "--steps", "10", "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()

    proc = subprocess.run(
        [sys.executable, "-m", "periodicwalk", "simulate", "--q", "0", "--theta", "1.0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 1
    assert "usage error" in proc.stderr
