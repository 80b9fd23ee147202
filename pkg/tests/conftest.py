"""Shared fixtures; the bump and front solves are expensive and computed once."""

import numpy as np
import pytest

from src.front import front_speed
from src.nonlinearity import BistableCubic, Ignition
from src.solver import Grid
from src.stationary import StationaryProfile, solve_bump


@pytest.fixture(scope="session")
def cubic():
    return BistableCubic(a=0.25)


@pytest.fixture(scope="session")
def cubic_bump(cubic):
    return solve_bump(cubic)


@pytest.fixture(scope="session")
def cubic_front(cubic):
    return front_speed(cubic)


@pytest.fixture
def ignition():
    return Ignition(theta0=0.3)


@pytest.fixture
def small_grid():
    """X = 20 with h = 0.1."""
    return Grid(half_width=20.0, n_cells=400)


@pytest.fixture
def perturbed_bump(cubic_bump):
    """The cubic bump with 1e-3 added at the crest node."""
    us = cubic_bump.us.copy()
    us[0] += 1e-3
    return StationaryProfile(
        theta2=cubic_bump.theta2, xs=cubic_bump.xs, us=us, dus=cubic_bump.dus, decay_rate=cubic_bump.decay_rate
    )


@pytest.fixture
def short_zero_profile():
    xs = np.linspace(0.0, 0.2, 50)
    return StationaryProfile(theta2=0.0, xs=xs, us=np.zeros(50), dus=np.zeros(50), decay_rate=0.0)
