"""Spatial grid, field snapshots and simulation parameters."""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Optional

import numpy as np

from ..errors import DomainError
from ..nonlinearity import Nonlinearity

RANGE_SLACK = 1e-12


class Boundary(str, Enum):
    """Far-field boundary rows of the diffusion matrix."""

    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"


@dataclass(frozen=True)
class Grid:
    """Nodes x_j = (j − n/2)·h on [−X, X], symmetric about the centre node."""

    half_width: float = 40.0
    n_cells: int = 1600

    def __post_init__(self):
        if not self.half_width > 0.0:
            raise DomainError(f"half width must be positive, got {self.half_width}")
        if int(self.n_cells) != self.n_cells or self.n_cells <= 0 or self.n_cells % 2:
            raise DomainError(f"n_cells must be an even positive integer, got {self.n_cells}")

    @property
    def h(self) -> float:
        return 2.0 * self.half_width / self.n_cells

    @property
    def n_nodes(self) -> int:
        return self.n_cells + 1

    @property
    def center(self) -> int:
        return self.n_cells // 2

    @cached_property
    def x(self) -> np.ndarray:
        # integer offsets keep x_j = -x_{n-j} exact
        return self.h * (np.arange(self.n_nodes) - self.center)

    def window(self, width: float) -> np.ndarray:
        """Mask of the nodes with |x_j| <= width."""
        return np.abs(self.x) <= width + RANGE_SLACK

    def doubled(self) -> "Grid":
        """Twice the half width at the same spacing."""
        return Grid(half_width=2.0 * self.half_width, n_cells=2 * self.n_cells)


@dataclass(frozen=True, eq=False)
class Field:
    """Sample of T(t, ·) on a grid."""

    grid: Grid
    time: float
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.grid.n_nodes,):
            raise DomainError(f"field needs {self.grid.n_nodes} values, got shape {self.values.shape}")
        if self.time < 0.0:
            raise DomainError(f"time must be non-negative, got {self.time}")
        if np.any(self.values < -RANGE_SLACK) or np.any(self.values > 1.0 + RANGE_SLACK):
            raise DomainError("field values must lie in [0, 1]")

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    @property
    def midpoint(self) -> float:
        return float(self.values[self.grid.center])

    @property
    def mass(self) -> float:
        return float(self.grid.h * np.sum(self.values))

    def front_position(self, level: float) -> float:
        return front_position(self.values, self.grid, level)

    def boundary_excess(self) -> float:
        """Largest value on the two boundary-adjacent nodes."""
        return float(max(self.values[1], self.values[-2]))


def level_radius(values: np.ndarray, grid: Grid, level: float) -> float:
    """max{|x_j| : values_j >= level} on the right half, refined linearly to the crossing."""
    right = values[grid.center:]
    above = np.flatnonzero(right >= level)
    if above.size == 0:
        return 0.0
    j = int(above[-1])
    x = grid.x[grid.center + j]
    if j + 1 >= right.size:
        return float(x)
    upper, lower = right[j], right[j + 1]
    return float(x + grid.h * (upper - level) / (upper - lower))


def front_position(values: np.ndarray, grid: Grid, level: float) -> float:
    """First crossing of ``level`` from above for data decreasing in x."""
    below = np.flatnonzero(values < level)
    if below.size == 0:
        return float(grid.x[-1])
    j = int(below[0])
    if j == 0:
        return float(grid.x[0])
    upper, lower = values[j - 1], values[j]
    return float(grid.x[j - 1] + grid.h * (upper - level) / (upper - lower))


@dataclass(frozen=True)
class SimParams:
    """Time stepping and output cadence."""

    dt: float
    t_max: float
    boundary: Boundary = Boundary.DIRICHLET
    snapshot_every: int = 0
    probe_every: int = 10

    def __post_init__(self):
        if not self.dt > 0.0:
            raise DomainError(f"time step must be positive, got {self.dt}")
        if not self.t_max >= 0.0:
            raise DomainError(f"horizon must be non-negative, got {self.t_max}")
        if self.probe_every <= 0 or self.snapshot_every < 0:
            raise DomainError("probe_every must be positive and snapshot_every non-negative")
        object.__setattr__(self, "boundary", Boundary(self.boundary))

    @property
    def n_steps(self) -> int:
        return int(round(self.t_max / self.dt))

    def check_monotone(self, spec: Nonlinearity) -> None:
        """dt·c <= 1 keeps θ ↦ θ + dt·f(θ) non-decreasing."""
        c = spec.lipschitz_constant()
        if self.dt * c > 1.0 + RANGE_SLACK:
            raise DomainError(f"dt = {self.dt} violates the monotonicity constraint dt <= 1/c = {1.0 / c}")

    @classmethod
    def default(
        cls,
        grid: Grid,
        spec: Nonlinearity,
        t_max: float,
        boundary: Boundary = Boundary.DIRICHLET,
        dt: Optional[float] = None,
        **kwargs,
    ) -> "SimParams":
        return cls(dt=dt if dt is not None else default_dt(grid, spec), t_max=t_max, boundary=boundary, **kwargs)


def default_dt(grid: Grid, spec: Nonlinearity) -> float:
    """min(h²/4, 1/(2c)); the h² term only limits splitting error near the threshold."""
    c = spec.lipschitz_constant()
    dt = 0.25 * grid.h**2
    return dt if c == 0.0 else min(dt, 0.5 / c)
