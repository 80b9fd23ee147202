"""Traveling fronts by phase-plane shooting."""

import math

import numpy as np
import pytest

from src.errors import BracketError, UnsupportedKindError
from src.front import Verdict, front_speed, profile_residual, shoot
from src.nonlinearity import KPP, BistableCubic, Ignition
from src.solver import Grid


def tanh_speed(a):
    return (1.0 - 2.0 * a) / math.sqrt(2.0)


class TestCubicFront:
    def test_speed_matches_tanh_ansatz(self, cubic_front):
        assert cubic_front.speed == pytest.approx(tanh_speed(0.25), abs=1e-3)
        lo, hi = cubic_front.bracket
        assert lo <= cubic_front.speed <= hi and hi - lo <= 1e-6

    def test_profile_is_centred_and_decreasing(self, cubic_front):
        assert float(cubic_front.evaluate(0.0)) == pytest.approx(0.5, abs=1e-6)
        assert np.all(np.diff(cubic_front.phis) < 0.0)
        assert cubic_front.evaluate(-1e3) == 1.0 and cubic_front.evaluate(1e3) == 0.0

    def test_profile_matches_tanh(self, cubic_front):
        xs = np.linspace(-10.0, 10.0, 201)
        exact = 0.5 * (1.0 - np.tanh(xs / (2.0 * math.sqrt(2.0))))
        np.testing.assert_allclose(cubic_front.evaluate(xs), exact, atol=1e-3)

    def test_residual(self, cubic, cubic_front):
        assert cubic_front.shoot_residual <= 1e-6
        assert profile_residual(cubic_front.xs, cubic_front.phis, cubic_front.speed, cubic) == cubic_front.shoot_residual

    def test_field_on_grid(self, cubic_front):
        grid = Grid(half_width=20.0, n_cells=400)
        field = cubic_front.field_on(grid, position=-5.0)
        assert field.front_position(0.5) == pytest.approx(-5.0, abs=1e-3)
        assert cubic_front.shifted(2.0).evaluate(2.0) == pytest.approx(0.5, abs=1e-6)

    def test_translation_keeps_the_residual(self, cubic, cubic_front):
        moved = cubic_front.shifted(3.7)
        assert profile_residual(moved.xs, moved.phis, moved.speed, cubic) == pytest.approx(cubic_front.shoot_residual, abs=1e-10)
        xs = np.linspace(-6.0, 6.0, 25)
        np.testing.assert_allclose(moved.evaluate(xs + 3.7), cubic_front.evaluate(xs), atol=1e-12)


def test_shot_verdicts(cubic):
    assert shoot(cubic, 0.0).verdict is Verdict.UNDERSHOOT
    assert shoot(cubic, 1.0).verdict is Verdict.OVERSHOOT


@pytest.mark.parametrize("speed", [1.0, 1.5, 2.0])
def test_fast_shots_resting_at_the_middle_zero_overshoot(cubic, speed):
    shot = shoot(cubic, speed)
    assert shot.verdict is Verdict.OVERSHOOT
    assert min(shot.phis) > 0.2


def test_shot_starts_next_to_the_saddle(cubic):
    shot = shoot(cubic, 0.2)
    assert shot.phis[0] == pytest.approx(1.0, abs=1e-7)
    assert shot.psis[0] < 0.0


@pytest.mark.parametrize("spec", [Ignition(theta0=0.3), KPP(p=1.0)], ids=str)
def test_front_needs_two_stable_states(spec):
    with pytest.raises(UnsupportedKindError):
        front_speed(spec)


def test_bracket_must_change_verdict(cubic):
    with pytest.raises(BracketError):
        front_speed(cubic, v_max=0.1)


@pytest.mark.slow
@pytest.mark.parametrize("a", [0.1, 0.4, 0.5, 0.6])
def test_speed_across_a(a):
    solution = front_speed(BistableCubic(a=a))
    assert solution.speed == pytest.approx(tanh_speed(a), abs=1e-3)
    if a > 0.5:
        assert solution.speed < 0.0


def test_amplitude_scales_the_speed(cubic_front):
    # f -> k²f stretches the profile by 1/k and multiplies v by k
    fast = front_speed(BistableCubic(a=0.25, amplitude=4.0))
    assert fast.speed / cubic_front.speed == pytest.approx(2.0, abs=1e-4)


@pytest.mark.slow
def test_speed_falls_to_zero_towards_balanced_cubic():
    speeds = [front_speed(BistableCubic(a=a)).speed for a in (0.1, 0.2, 0.3, 0.4, 0.45)]
    assert all(v > 0.0 for v in speeds)
    assert all(later < earlier for earlier, later in zip(speeds, speeds[1:]))
    assert speeds[-1] < 0.1
