"""Monotone splitting scheme for T_t = T_xx + f(T).

One step is the clamped explicit reaction map θ ↦ clamp(θ + dt·f(θ), 0, 1)
followed by backward-Euler diffusion. Both sub-maps are order-preserving, so
ordered initial data stay ordered at every step.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple
import logging

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

from .grid import Boundary, Field, Grid, SimParams, level_radius
from ..errors import DomainError, NumericalFaultError
from ..nonlinearity import Nonlinearity

logger = logging.getLogger(__name__)

FAR_FIELD_LEVEL = 1e-6


@lru_cache(maxsize=32)
def _diffusion_solver(n_nodes: int, h: float, dt: float, boundary: Boundary) -> Callable[[np.ndarray], np.ndarray]:
    """Factorize I − dt·D₂ once per (grid, dt, boundary)."""
    r = dt / (h * h)
    main = np.full(n_nodes, 1.0 + 2.0 * r)
    lower = np.full(n_nodes - 1, -r)
    upper = np.full(n_nodes - 1, -r)
    if boundary is Boundary.DIRICHLET:
        main[0] = main[-1] = 1.0
        upper[0] = 0.0
        lower[-1] = 0.0
    else:
        # zero-flux rows; every column sums to one, so the discrete sum is conserved
        main[0] = main[-1] = 1.0 + r
    matrix = scipy.sparse.diags([main, lower, upper], [0, -1, 1], shape=(n_nodes, n_nodes), format="csc")
    logger.debug(f"factorized diffusion matrix n={n_nodes} r={r:.4g} boundary={boundary.value}")
    return scipy.sparse.linalg.factorized(matrix)


def _advance(values: np.ndarray, spec: Nonlinearity, dt: float, solve, boundary: Boundary) -> np.ndarray:
    rhs = values + dt * spec.rate(values)
    np.clip(rhs, 0.0, 1.0, out=rhs)
    if boundary is Boundary.DIRICHLET:
        rhs[0] = rhs[-1] = 0.0
    return solve(rhs)


class Stepper:
    """One-step map for a fixed (spec, grid, params), sharing the factorized matrix."""

    def __init__(self, spec: Nonlinearity, grid: Grid, params: SimParams):
        params.check_monotone(spec)
        self.spec = spec
        self.grid = grid
        self.params = params
        self._solve = _diffusion_solver(grid.n_nodes, grid.h, params.dt, params.boundary)

    def __call__(self, values: np.ndarray) -> np.ndarray:
        return _advance(values, self.spec, self.params.dt, self._solve, self.params.boundary)


def indicator_ic(grid: Grid, L: float, alpha: float = 1.0) -> Field:
    """α·χ_{[−L, L]} sampled at the nodes.

    Nodes with |x_j| <= L carry α. The first node beyond ±L carries
    α·(L − x_in)/h, the covered share of the cell between it and the last
    node inside, so the field is continuous in L. L = 0 is the empty support.
    """
    X = grid.half_width
    if not 0.0 <= L <= X * (1.0 + 1e-12):
        raise DomainError(f"half-width L = {L} must lie in [0, {X}]")
    if not 0.0 < alpha <= 1.0:
        raise DomainError(f"amplitude alpha = {alpha} must lie in (0, 1]")
    values = np.zeros(grid.n_nodes)
    if L == 0.0:
        return Field(grid=grid, time=0.0, values=values)
    h, centre = grid.h, grid.center
    # integer node offsets keep the two sides mirror images
    k = min(int(np.floor(L / h * (1.0 + 1e-12))), centre)
    values[centre - k : centre + k + 1] = alpha
    if k < centre:
        share = alpha * min(max((L - k * h) / h, 0.0), 1.0)
        values[centre - k - 1] = values[centre + k + 1] = share
    return Field(grid=grid, time=0.0, values=values)


def step(field: Field, spec: Nonlinearity, params: SimParams) -> Field:
    """Advance one time step."""
    values = Stepper(spec, field.grid, params)(field.values)
    if not np.all(np.isfinite(values)):
        raise NumericalFaultError(f"non-finite values after step at t={field.time + params.dt:.6g}")
    return Field(grid=field.grid, time=field.time + params.dt, values=values)


@dataclass(eq=False)
class ProbeSet:
    """What to record at probe times besides T(t, 0) and sup T.

    ``reference`` maps node positions to a profile; the recorder then stores
    sup_{|x| <= window} |T − reference|.
    """

    levels: Tuple[float, ...] = (0.5,)
    window: float = 1.0
    reference: Optional[Callable[[np.ndarray], np.ndarray]] = None


class ProbeRecorder:
    """Accumulates probe series while a trajectory is running."""

    def __init__(self, grid: Grid, probes: ProbeSet):
        self.grid = grid
        self.probes = probes
        self.times: List[float] = []
        self.midpoint: List[float] = []
        self.sup_norm: List[float] = []
        self.radii: Dict[float, List[float]] = {level: [] for level in probes.levels}
        self.window_distance: List[float] = []
        self._mask = grid.window(probes.window)
        self._reference = None
        if probes.reference is not None:
            self._reference = np.asarray(probes.reference(grid.x[self._mask]), dtype=float)

    def record(self, t: float, values: np.ndarray) -> None:
        self.times.append(t)
        self.midpoint.append(float(values[self.grid.center]))
        self.sup_norm.append(float(np.max(values)))
        for level, series in self.radii.items():
            series.append(level_radius(values, self.grid, level))
        if self._reference is not None:
            self.window_distance.append(float(np.max(np.abs(values[self._mask] - self._reference))))

    def __len__(self) -> int:
        return len(self.times)


@dataclass(eq=False)
class Trajectory:
    """Probe series, snapshots and final state of one run."""

    grid: Grid
    times: np.ndarray
    midpoint: np.ndarray
    sup_norm: np.ndarray
    radii: Dict[float, np.ndarray]
    window_distance: Optional[np.ndarray]
    final: Field
    snapshots: List[Field] = field(default_factory=list)
    stopped_early: bool = False
    t_max: float = 0.0

    @classmethod
    def from_recorder(cls, recorder: ProbeRecorder, final: Field, snapshots: List[Field], stopped_early: bool, t_max: float) -> "Trajectory":
        window = np.asarray(recorder.window_distance) if recorder.probes.reference is not None else None
        return cls(
            grid=recorder.grid,
            times=np.asarray(recorder.times),
            midpoint=np.asarray(recorder.midpoint),
            sup_norm=np.asarray(recorder.sup_norm),
            radii={level: np.asarray(series) for level, series in recorder.radii.items()},
            window_distance=window,
            final=final,
            snapshots=snapshots,
            stopped_early=stopped_early,
            t_max=t_max,
        )

    def __len__(self) -> int:
        return int(self.times.size)

    def probe_table(self) -> Tuple[List[str], np.ndarray]:
        """Column names and rows for the probe CSV (t, T0, supT, r_θ..., dist)."""
        names = ["t", "T0", "supT"] + [f"r_{level:g}" for level in self.radii]
        columns = [self.times, self.midpoint, self.sup_norm] + list(self.radii.values())
        if self.window_distance is not None:
            names.append("dist")
            columns.append(self.window_distance)
        return names, np.column_stack(columns)


StopPredicate = Callable[[ProbeRecorder], bool]


def simulate(
    ic: Field,
    spec: Nonlinearity,
    params: SimParams,
    probes: Optional[ProbeSet] = None,
    stop: Optional[StopPredicate] = None,
) -> Trajectory:
    """Step from ``ic`` to ``params.t_max``, recording probes and snapshots.

    ``stop`` is evaluated after every probe; a true result ends the run.
    """
    probes = probes or ProbeSet()
    grid = ic.grid
    advance = Stepper(spec, grid, params)
    recorder = ProbeRecorder(grid, probes)
    snapshots: List[Field] = []

    values = ic.values.copy()
    recorder.record(ic.time, values)
    if params.snapshot_every:
        snapshots.append(Field(grid=grid, time=ic.time, values=values.copy()))

    n_steps = params.n_steps
    stopped = False
    t = ic.time
    for k in range(1, n_steps + 1):
        values = advance(values)
        t = ic.time + k * params.dt
        if k % params.probe_every == 0 or k == n_steps:
            if not np.all(np.isfinite(values)):
                raise NumericalFaultError(f"non-finite values at t={t:.6g}")
            recorder.record(t, values)
            if stop is not None and stop(recorder):
                stopped = True
        if params.snapshot_every and k % params.snapshot_every == 0:
            snapshots.append(Field(grid=grid, time=t, values=values.copy()))
        if stopped:
            logger.debug(f"run stopped by decision at t={t:.4g}")
            break

    final = Field(grid=grid, time=t, values=np.clip(values, 0.0, 1.0))
    return Trajectory.from_recorder(recorder, final, snapshots, stopped, params.t_max)


def run_indicator(
    spec: Nonlinearity,
    grid: Grid,
    params: SimParams,
    L: float,
    alpha: float = 1.0,
    probes: Optional[ProbeSet] = None,
    stop: Optional[StopPredicate] = None,
    max_doublings: int = 1,
) -> Trajectory:
    """Simulate from α·χ_{[−L, L]}, widening the domain when the far field is reached.

    A Dirichlet run that ends with a boundary-adjacent value above 1e−6 and
    was not ended by ``stop`` is repeated with twice the half width.
    """
    for attempt in range(max_doublings + 1):
        trajectory = simulate(indicator_ic(grid, L, alpha), spec, params, probes, stop)
        excess = trajectory.final.boundary_excess()
        if params.boundary is not Boundary.DIRICHLET or trajectory.stopped_early or excess <= FAR_FIELD_LEVEL:
            return trajectory
        if attempt == max_doublings:
            logger.warning(f"boundary-adjacent value {excess:.3g} at X={grid.half_width:g} after {attempt} doublings")
            return trajectory
        logger.warning(
            f"boundary-adjacent value {excess:.3g} exceeds {FAR_FIELD_LEVEL:g}; "
            f"re-running L={L:.6g} with X={2 * grid.half_width:g}"
        )
        grid = grid.doubled()
    return trajectory
