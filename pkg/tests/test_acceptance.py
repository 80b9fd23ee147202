"""Desk-scale runs at the default resolution; minutes rather than seconds."""

import numpy as np
import pytest

from src.checks import check_indicator_structure
from src.config import validate
from src.laboratory import Laboratory
from src.nonlinearity import Ignition
from src.solver import Boundary, Grid, ProbeSet, SimParams, Stepper, run_indicator, simulate
from src.threshold import Extinction, Propagation, ThresholdSearch, longest_run

pytestmark = pytest.mark.slow

DEFAULT_GRID = Grid(half_width=40.0, n_cells=1600)


def threshold_lab(tmp_path, nonlinearity, n_cells=1600, gap_tol=1e-3):
    run = validate(
        {
            "nonlinearity": nonlinearity,
            "grid": {"half_width": 40.0, "n_cells": n_cells},
            "threshold": {"L_min": 0.05, "L_max": 10.0, "gap_tol": gap_tol, "t_max": 200.0},
        }
    )
    return Laboratory(run, output_dir=tmp_path)


def test_ignition_threshold(tmp_path):
    lab = threshold_lab(tmp_path, {"kind": "ignition", "theta0": 0.3})
    result = lab.threshold_result()
    assert result.sharpness_gap <= 1e-3
    assert result.iterations <= 25
    assert not result.hair_trigger

    params = SimParams.default(lab.grid, lab.spec, t_max=200.0)
    search = ThresholdSearch(lab.spec, lab.grid, params)
    below = search.classify(result.L_lo - 0.1).outcome
    above = search.classify(result.L_hi + 0.1).outcome
    assert isinstance(below, Extinction)
    assert isinstance(above, Propagation)

    plateau = ProbeSet(window=1.0, reference=lambda x: np.full_like(x, 0.3))
    trajectory = run_indicator(lab.spec, lab.grid, params, result.L0_estimate, probes=plateau)
    span, _, _ = longest_run(trajectory.times, trajectory.window_distance <= 0.05)
    assert span >= 5.0


def test_degenerate_kpp_has_a_positive_threshold(tmp_path):
    # f = θ⁴(1 − θ): small data die out, so L0 is bounded away from zero
    lab = threshold_lab(tmp_path, {"kind": "kpp", "p": 4.0}, n_cells=400, gap_tol=0.05)
    result = lab.threshold_result()
    assert not result.hair_trigger
    assert isinstance(result.trace[0].outcome, Extinction)
    assert result.L_lo > 0.5
    assert result.sharpness_gap <= 0.05


def test_bistable_threshold_passes_the_bump(tmp_path, cubic, cubic_bump):
    lab = threshold_lab(tmp_path, {"kind": "bistable", "a": 0.25}, n_cells=800)
    result = lab.threshold_result()
    assert result.sharpness_gap <= 1e-3

    params = SimParams.default(lab.grid, cubic, t_max=200.0)
    probes = ProbeSet(window=5.0, reference=cubic_bump.evaluate)
    trajectory = run_indicator(cubic, lab.grid, params, result.L0_estimate, probes=probes)
    assert trajectory.window_distance.min() <= 0.05


def test_bump_is_nearly_stationary(cubic, cubic_bump):
    params = SimParams.default(DEFAULT_GRID, cubic, t_max=10.0, probe_every=100)
    probes = ProbeSet(window=DEFAULT_GRID.half_width, reference=cubic_bump.evaluate)
    trajectory = simulate(cubic_bump.field_on(DEFAULT_GRID), cubic, params, probes)
    assert trajectory.window_distance.max() <= 5e-3


def test_front_speed_from_level_set(cubic, cubic_front):
    grid = Grid(half_width=40.0, n_cells=800)
    params = SimParams(dt=0.01, t_max=20.0, boundary=Boundary.NEUMANN, snapshot_every=500)
    trajectory = simulate(cubic_front.field_on(grid, position=-20.0), cubic, params)
    fields = {round(snapshot.time, 6): snapshot for snapshot in trajectory.snapshots}
    start, end = fields[5.0].front_position(0.5), fields[20.0].front_position(0.5)
    assert (end - start) / 15.0 == pytest.approx(cubic_front.speed, abs=2e-2)


def test_ordered_pairs_stay_ordered():
    spec = Ignition(theta0=0.3)
    params = SimParams.default(DEFAULT_GRID, spec, t_max=2.0)
    advance = Stepper(spec, DEFAULT_GRID, params)
    rng = np.random.default_rng(7)
    for _ in range(100):
        u = rng.uniform(0.0, 1.0, DEFAULT_GRID.n_nodes)
        v = np.minimum(1.0, u + rng.uniform(0.0, 0.1, DEFAULT_GRID.n_nodes))
        for _ in range(params.n_steps):
            u, v = advance(u), advance(v)
            assert np.all(u <= v + 1e-12)
        assert 0.0 <= u.min() and v.max() <= 1.0


@pytest.mark.parametrize("L", [0.2, 0.5, 1.0, 2.0, 5.0])
def test_indicator_structure(L):
    spec = Ignition(theta0=0.3)
    grid = Grid(half_width=40.0, n_cells=800)
    params = SimParams.default(grid, spec, t_max=20.0)
    for result in check_indicator_structure(spec, grid, params, L):
        assert result.passed, result.detail
