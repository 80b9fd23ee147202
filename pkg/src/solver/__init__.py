"""Monotone finite-difference solver for T_t = T_xx + f(T)."""

from .grid import Boundary, Field, Grid, SimParams, default_dt, front_position, level_radius
from .scheme import (
    FAR_FIELD_LEVEL,
    ProbeRecorder,
    ProbeSet,
    Stepper,
    Trajectory,
    indicator_ic,
    run_indicator,
    simulate,
    step,
)
from .scaling import Rescaling, rescaled_problem

__all__ = [
    'Boundary',
    'Field',
    'Grid',
    'SimParams',
    'default_dt',
    'front_position',
    'level_radius',
    'FAR_FIELD_LEVEL',
    'ProbeRecorder',
    'ProbeSet',
    'Stepper',
    'Trajectory',
    'indicator_ic',
    'run_indicator',
    'simulate',
    'step',
    'Rescaling',
    'rescaled_problem',
]
