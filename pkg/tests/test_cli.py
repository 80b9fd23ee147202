"""Commands end to end through the Typer runner."""

import json

import numpy as np
import pytest
import yaml
from typer.testing import CliRunner

from src.cli import app

runner = CliRunner()

SMALL = {
    "nonlinearity": {"kind": "ignition", "theta0": 0.3},
    "grid": {"half_width": 10.0, "n_cells": 100},
    "sim": {"t_max": 2.0, "probe_every": 5},
}

PAIR = {
    "f": {"kind": "ignition", "theta0": 0.3},
    "g": {"kind": "ignition", "theta0": 0.3, "amplitude": 1.1},
    "theta1": 0.15,
    "eps1": 0.1,
    "theta_max": 0.475,
    "alpha_T": 0.45,
    "alpha_S": 0.46,
    "L1": 1.0,
    "L2": 1.1,
    "continuity_t_max": 1.0,
}


def config_file(tmp_path, **sections):
    raw = {**SMALL, **sections}
    path = tmp_path / "run.yaml"
    path.write_text(yaml.safe_dump(raw))
    return path


def invoke(*args):
    return runner.invoke(app, [str(arg) for arg in args])


def read_csv(path):
    names = path.read_text().splitlines()[0].split(",")
    return names, np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)


class TestSimulate:
    def test_heat_run(self, tmp_path):
        path = config_file(tmp_path, nonlinearity={"kind": "ignition", "amplitude": 0.0})
        result = invoke("simulate", "-c", path, "-o", tmp_path / "out")
        assert result.exit_code == 0, result.output

        names, rows = read_csv(tmp_path / "out" / "simulate" / "probes.csv")
        assert names[:3] == ["t", "T0", "supT"]
        assert rows[0, 0] == 0.0
        assert np.all(np.diff(rows[:, 2]) < 0.0)

        summary = json.loads((tmp_path / "out" / "simulate" / "summary.json").read_text())
        assert summary["config"]["nonlinearity"]["amplitude"] == 0.0
        assert summary["t_final"] == pytest.approx(2.0)

    def test_reruns_are_identical(self, tmp_path):
        path = config_file(tmp_path)
        for name in ("a", "b"):
            assert invoke("simulate", "-c", path, "-o", tmp_path / name).exit_code == 0
        for artifact in ("probes.csv", "summary.json"):
            first = (tmp_path / "a" / "simulate" / artifact).read_bytes()
            assert first == (tmp_path / "b" / "simulate" / artifact).read_bytes()

    def test_snapshots(self, tmp_path):
        path = config_file(tmp_path, sim={"t_max": 1.0, "dt": 0.01, "snapshot_every": 50})
        assert invoke("simulate", "-c", path, "-o", tmp_path).exit_code == 0
        snapshots = sorted((tmp_path / "simulate").glob("snap_t*.csv"))
        assert len(snapshots) >= 2
        names, rows = read_csv(snapshots[0])
        assert names == ["x", "T"]
        assert rows.shape == (101, 2)


def test_threshold_reruns_are_identical(tmp_path):
    path = config_file(tmp_path, threshold={"L_min": 0.05, "L_max": 5.0, "gap_tol": 0.05, "t_max": 20.0})
    for name in ("a", "b"):
        result = invoke("threshold", "-c", path, "-o", tmp_path / name)
        assert result.exit_code == 0, result.output
    first = sorted((tmp_path / "a" / "threshold").iterdir())
    assert {"trace.csv", "threshold.json", "probes_00.csv"} <= {artifact.name for artifact in first}
    for artifact in first:
        assert artifact.read_bytes() == (tmp_path / "b" / "threshold" / artifact.name).read_bytes()


def test_bump(tmp_path):
    path = config_file(tmp_path, nonlinearity={"kind": "bistable", "a": 0.25}, bump={})
    result = invoke("bump", "-c", path, "-o", tmp_path)
    assert result.exit_code == 0, result.output
    summary = json.loads((tmp_path / "bump" / "bump.json").read_text())
    assert summary["theta2"] == pytest.approx(0.3923748, abs=1e-7)
    assert summary["bell_shape"]["ok"]
    names, _ = read_csv(tmp_path / "bump" / "bump.csv")
    assert names == ["x", "U", "Uprime"]


def test_front(tmp_path):
    path = config_file(tmp_path, nonlinearity={"kind": "bistable", "a": 0.25}, front={})
    result = invoke("front", "-c", path, "-o", tmp_path)
    assert result.exit_code == 0, result.output
    summary = json.loads((tmp_path / "front" / "front.json").read_text())
    assert summary["speed"] == pytest.approx(0.5 / np.sqrt(2.0), abs=1e-3)


@pytest.mark.parametrize("command", ["lemma22", "compare"])
def test_lemma22(tmp_path, command):
    path = config_file(tmp_path, lemma22=PAIR)
    result = invoke(command, "-c", path, "-o", tmp_path)
    assert result.exit_code == 0, result.output
    summary = json.loads((tmp_path / "lemma22" / "lemma22.json").read_text())
    assert summary["domination"]["holds"]
    assert summary["continuity"]["ok"]
    names, _ = read_csv(tmp_path / "lemma22" / "omega.csv")
    assert names == ["t", "omega", "active"]


def test_sweep_records_failed_cells_as_null(tmp_path):
    path = config_file(
        tmp_path,
        nonlinearity={"kind": "bistable", "a": 0.25},
        sweep={"command": "bump", "parameter": "a", "values": [0.25, 0.6]},
    )
    result = invoke("sweep", "-c", path, "-o", tmp_path)
    assert result.exit_code == 0, result.output

    text = (tmp_path / "sweep" / "sweep.json").read_text()
    assert "NaN" not in text
    summary = json.loads(text)
    assert summary["columns"] == ["value", "theta2", "residual", "energy_defect"]
    good, failed = summary["rows"]
    assert good[1] == pytest.approx(0.3923748, abs=1e-7)
    assert failed == [0.6, None, None, None]
    assert "UnsupportedKindError" in summary["errors"]["0.6"]

    _, rows = read_csv(tmp_path / "sweep" / "sweep.csv")
    assert rows.shape == (2, 4)
    assert np.isnan(rows[1, 1:]).all()


def test_check_passes_on_ignition(tmp_path):
    result = invoke("check", "-c", config_file(tmp_path), "-o", tmp_path)
    assert result.exit_code == 0, result.output
    report = json.loads((tmp_path / "check" / "check.json").read_text())
    assert report["passed"]
    assert {"endpoints", "lipschitz", "comparison", "symmetry", "mass_conservation"} <= {
        check["name"] for check in report["checks"]
    }


def test_check_uses_the_configured_amplitude(tmp_path):
    path = config_file(tmp_path, sim={"t_max": 2.0, "probe_every": 5, "L": 1.0, "alpha": 0.5})
    result = invoke("check", "-c", path, "-o", tmp_path)
    assert result.exit_code == 0, result.output
    report = json.loads((tmp_path / "check" / "check.json").read_text())
    midpoint = next(check for check in report["checks"] if check["name"] == "midpoint_turns")
    assert midpoint["passed"]
    assert "alpha=0.5" in midpoint["detail"]


def test_show_config(tmp_path):
    result = invoke("show-config", "-c", config_file(tmp_path), "--set", "grid.half_width=12.5")
    assert result.exit_code == 0, result.output
    assert "nonlinearity" in result.output
    assert "12.5" in result.output


class TestExitCodes:
    def test_usage_error(self, tmp_path):
        assert invoke("simulate", "-c", config_file(tmp_path), "--set", "foo").exit_code == 1

    def test_config_error(self, tmp_path):
        path = config_file(tmp_path, grid={"half_width": 10.0, "n_cells": 101})
        result = invoke("simulate", "-c", path, "-o", tmp_path)
        assert result.exit_code == 2
        assert "grid.n_cells" in result.output

    def test_missing_section(self, tmp_path):
        assert invoke("front", "-c", config_file(tmp_path), "-o", tmp_path).exit_code == 2

    def test_unsupported_kind(self, tmp_path):
        result = invoke("front", "-c", config_file(tmp_path, front={}), "-o", tmp_path)
        assert result.exit_code == 3
        assert "UnsupportedKindError" in result.output

    def test_bracket_error(self, tmp_path):
        path = config_file(tmp_path, threshold={"L_min": 5.0, "L_max": 8.0, "t_max": 20.0})
        assert invoke("threshold", "-c", path, "-o", tmp_path).exit_code == 4
