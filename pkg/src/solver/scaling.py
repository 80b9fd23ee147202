"""Parabolic rescaling T̃(t, x) = T(L²t, Lx).

If T solves T_t = T_xx + f(T) from χ_{[−L, L]}, then T̃ solves
T̃_t = T̃_xx + L²·f(T̃) from χ_{[−1, 1]}. With X̃ = X/L, the same number of
cells and dt̃ = dt/L² the two discrete problems coincide step for step.
"""

from dataclasses import dataclass, replace

from .grid import Field, Grid, SimParams
from .scheme import indicator_ic
from ..errors import DomainError
from ..nonlinearity import Nonlinearity


@dataclass(frozen=True)
class Rescaling:
    """Maps a half-width-L problem to its unit-interval counterpart."""

    L: float

    @property
    def factor(self) -> float:
        return self.L * self.L

    def transform_spec(self, spec: Nonlinearity) -> Nonlinearity:
        return spec.scaled(self.factor)

    def transform_grid(self, grid: Grid) -> Grid:
        return Grid(half_width=grid.half_width / self.L, n_cells=grid.n_cells)

    def transform_params(self, params: SimParams) -> SimParams:
        return replace(params, dt=params.dt / self.factor, t_max=params.t_max / self.factor)

    def transform_ic(self, grid: Grid, alpha: float = 1.0) -> Field:
        """α·χ_{[−1, 1]} on the rescaled grid."""
        return indicator_ic(self.transform_grid(grid), 1.0, alpha)

    def to_original(self, t: float, x: float) -> tuple:
        """(t̃, x̃) in the unit problem corresponds to (L²t̃, Lx̃) in the original."""
        return self.factor * t, self.L * x

    def to_unit(self, t: float, x: float) -> tuple:
        return t / self.factor, x / self.L


def rescaled_problem(L: float) -> Rescaling:
    if not L > 0.0:
        raise DomainError(f"rescaling needs L > 0, got {L}")
    return Rescaling(L=float(L))
