"""Critical bump profile of bistable reaction terms."""

from .bump import (
    BellShapeReport,
    StationaryProfile,
    bell_shape_check,
    energy_defect,
    residual,
    solve_bump,
)

__all__ = [
    'BellShapeReport',
    'StationaryProfile',
    'bell_shape_check',
    'energy_defect',
    'residual',
    'solve_bump',
]
