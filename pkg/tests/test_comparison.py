"""Continuity in L, domination and the ratio witness."""

import math
from dataclasses import replace

import numpy as np
import pytest

from src.errors import DomainError, PreconditionError
from src.nonlinearity import KPP, Ignition
from src.solver import Boundary, Grid, SimParams, indicator_ic
from src.threshold import (
    amplitude_pair_instance,
    check_domination,
    continuity_bound,
    continuity_bound_check,
    domination_margin,
    lockstep_params,
    ratio,
    ratio_witness,
)

GRID = Grid(half_width=20.0, n_cells=400)


class TestContinuity:
    def test_bound_formula(self):
        assert continuity_bound(1.0, 1.1, 0.7, 0.0) == 0.0
        assert continuity_bound(1.0, 1.1, 0.7, 2.0) == pytest.approx(0.1 * (math.exp(1.4) - 1.0))

    def test_bound_holds(self, ignition):
        params = lockstep_params(SimParams(dt=0.01, t_max=2.0, probe_every=5), 1.1, ignition)
        report = continuity_bound_check(ignition, 1.0, 1.1, GRID, params)
        assert report.ok
        assert report.min_difference >= 0.0
        assert report.times[-1] == pytest.approx(2.0)

    def test_explicit_check_times(self, ignition):
        params = SimParams(dt=0.01, t_max=2.0)
        report = continuity_bound_check(ignition, 1.0, 1.5, GRID, params, t_grid=[0.5, 1.0, 2.0])
        np.testing.assert_allclose(report.times, [0.5, 1.0, 2.0])
        assert report.ok

    def test_order_of_amplitudes(self, ignition):
        with pytest.raises(DomainError):
            continuity_bound_check(ignition, 1.2, 1.1, GRID, SimParams(dt=0.01, t_max=1.0))

    def test_lockstep_shrinks_time_step(self, ignition):
        params = lockstep_params(SimParams(dt=1.0, t_max=10.0), 2.0, ignition)
        assert params.dt * 2.0 * ignition.lipschitz_constant() <= 1.0


class TestDomination:
    def test_amplitude_pair_is_dominated(self, ignition):
        f, g, theta1, eps1, theta_max = amplitude_pair_instance(ignition, 1.0, 1.1)
        assert theta1 == pytest.approx(0.15)
        assert eps1 == pytest.approx(0.1)
        assert theta_max == pytest.approx(0.475)
        assert check_domination(f, g, theta1, eps1, theta_max)

    def test_reversed_pair_is_not(self, ignition):
        assert not check_domination(ignition.scaled(1.1), ignition, 0.15, 0.1, 0.475)
        assert domination_margin(ignition.scaled(1.1), ignition, 0.15, 0.1, 0.475) < 0.0

    @pytest.mark.parametrize("theta1, eps1, theta_max", [(0.0, 0.1, 0.5), (0.2, 0.0, 0.5), (0.5, 0.1, 0.4)])
    def test_invalid_window(self, ignition, theta1, eps1, theta_max):
        with pytest.raises(PreconditionError):
            domination_margin(ignition, ignition, theta1, eps1, theta_max)

    def test_pair_needs_ignition_window(self):
        with pytest.raises(PreconditionError):
            amplitude_pair_instance(KPP(p=1.0), 1.0, 1.1)


class TestRatio:
    def test_ratio_of_fields(self):
        T = np.array([0.0, 0.2, 0.4, 0.1])
        S = np.array([0.0, 0.3, 0.45, 0.1])
        assert ratio(T, S, 0.1, 0.5) == pytest.approx(min(0.2 / 0.1, 0.35 / 0.3))
        assert ratio(T, S, 0.1, 0.1) == pytest.approx(1.1)
        assert ratio(T, S, 0.5, 0.1) is None

    def test_witness_is_non_decreasing(self, ignition):
        params = SimParams(dt=0.01, t_max=10.0, probe_every=10)
        witness = ratio_witness(
            ignition,
            ignition.scaled(1.1),
            indicator_ic(GRID, 1.0, 0.45),
            indicator_ic(GRID, 1.0, 0.46),
            0.15,
            0.1,
            params,
            theta_max=0.475,
        )
        assert witness.t_start == 0.0
        assert witness.start_value == pytest.approx(0.31 / 0.30)
        assert witness.holds()
        assert witness.worst_drop() <= 1e-6
        assert witness.terminal > 1.001

    def test_witness_preconditions(self, ignition):
        params = SimParams(dt=0.01, t_max=1.0)
        low, high = indicator_ic(GRID, 1.0, 0.45), indicator_ic(GRID, 1.0, 0.46)
        g = ignition.scaled(1.1)
        with pytest.raises(PreconditionError):
            ratio_witness(ignition, g, high, low, 0.15, 0.1, params, theta_max=0.475)
        with pytest.raises(PreconditionError):
            ratio_witness(ignition, g, low, high, 0.15, 0.1, replace(params, boundary=Boundary.NEUMANN), theta_max=0.475)
        with pytest.raises(PreconditionError):
            ratio_witness(g, ignition, low, high, 0.15, 0.1, params, theta_max=0.475)
        with pytest.raises(PreconditionError):
            ratio_witness(ignition, g, low, indicator_ic(Grid(half_width=10.0, n_cells=200), 1.0, 0.46), 0.15, 0.1, params)
