"""The stationary bump: balance temperature, residual and bell shape."""

import math

import numpy as np
import pytest

from src.errors import ResolutionError, UnsupportedKindError
from src.nonlinearity import BistableCubic, DampedBistable, Ignition, Tabulated
from src.stationary import bell_shape_check, energy_defect, residual, solve_bump


class TestCubicBump:
    def test_crest_is_theta2(self, cubic_bump):
        assert cubic_bump.theta2 == pytest.approx(0.3923748, abs=1e-7)
        assert cubic_bump.evaluate(0.0) == cubic_bump.theta2

    def test_residual(self, cubic, cubic_bump):
        assert residual(cubic_bump, cubic) <= 1e-6

    def test_energy_identity(self, cubic, cubic_bump):
        assert energy_defect(cubic_bump, cubic) <= 1e-8

    def test_bell_shape(self, cubic, cubic_bump):
        report = bell_shape_check(cubic_bump, cubic)
        assert report.ok, report.problems
        assert report.inflection_value == pytest.approx(0.25, abs=report.inflection_tolerance)
        assert report.tail_rate == pytest.approx(-math.sqrt(0.25), rel=1e-3)

    def test_even_with_odd_derivative(self, cubic_bump):
        x = np.linspace(0.0, 30.0, 61)
        np.testing.assert_array_equal(cubic_bump.evaluate(-x), cubic_bump.evaluate(x))
        np.testing.assert_array_equal(cubic_bump.derivative(-x), -cubic_bump.derivative(x))

    def test_tail_continues_the_table(self, cubic_bump):
        end = cubic_bump.x_end
        assert cubic_bump.evaluate(end) == pytest.approx(cubic_bump.us[-1])
        assert 0.0 < cubic_bump.evaluate(end + 10.0) < cubic_bump.us[-1]

    def test_table_columns(self, cubic_bump):
        table = cubic_bump.table()
        assert table.shape == (len(cubic_bump), 3)
        assert np.all(np.diff(table[:, 0]) > 0.0)

    def test_perturbed_crest_is_detected(self, cubic, perturbed_bump):
        assert residual(perturbed_bump, cubic) > 1e-4

    def test_stable_under_tighter_tolerance(self, cubic, cubic_bump):
        tighter = solve_bump(cubic, tol=1e-13)
        x = np.linspace(0.0, 25.0, 101)
        np.testing.assert_allclose(tighter.evaluate(x), cubic_bump.evaluate(x), rtol=0.0, atol=1e-8)


def test_tabulated_bump(cubic):
    table = [[t, float(cubic.eval_f(t))] for t in np.linspace(0.0, 1.0, 401)]
    spec = Tabulated.from_pairs(table, declared="bistable")
    profile = solve_bump(spec)
    assert profile.theta2 == pytest.approx(0.3923748, abs=1e-4)
    assert energy_defect(profile, spec) <= 1e-8


def test_damped_bump_flattens_onto_theta0():
    distances = []
    for kappa in (0.1, 1e-3):
        profile = solve_bump(DampedBistable(theta0=0.3, kappa=kappa))
        distances.append(abs(float(profile.evaluate(1.0)) - 0.3))
    assert distances[1] < distances[0]


@pytest.mark.parametrize("spec", [Ignition(theta0=0.3), BistableCubic(a=0.6)], ids=str)
def test_no_bump_without_balance(spec):
    with pytest.raises(UnsupportedKindError):
        solve_bump(spec)


def test_residual_needs_enough_points(cubic, short_zero_profile):
    with pytest.raises(ResolutionError):
        residual(short_zero_profile, cubic)
