"""Continuity in L, the domination condition and the ratio witness.

The continuity bound compares two runs of T_t = T_xx + L·f(T) from
χ_{[−1, 1]}; the ratio witness co-evolves T (reaction f) and S (reaction g)
and follows

    ω(t) = min{1 + ε₁, inf_{T > θ₁} (S − θ₁)/(T − θ₁)},

which stays non-decreasing while g(θ + ε(θ − θ₁)) ≥ (1 + ε)f(θ) holds on the
range T visits.
"""

from dataclasses import dataclass, replace
from typing import List, Optional, Sequence
import logging
import math

import numpy as np

from ..errors import DomainError, PreconditionError
from ..nonlinearity import Nonlinearity
from ..solver import Boundary, Field, Grid, SimParams, Stepper, indicator_ic

logger = logging.getLogger(__name__)

BOUND_SLACK = 1e-8
DOMINATION_SLACK = 1e-12
MONOTONE_SLACK = 1e-6
ACTIVE_LEVEL = 1e-9


@dataclass
class ContinuityReport:
    """Worst case of 0 <= T^{L2} − T^{L1} <= ((L2 − L1)/L1)(e^{cL1 t} − 1)."""

    L1: float
    L2: float
    lipschitz: float
    times: np.ndarray
    max_excess: float
    min_difference: float
    worst_t: float
    worst_x: float

    @property
    def ok(self) -> bool:
        return self.max_excess <= BOUND_SLACK and self.min_difference >= -BOUND_SLACK


def continuity_bound(L1: float, L2: float, c: float, t: float) -> float:
    return (L2 - L1) / L1 * math.expm1(c * L1 * t)


def continuity_bound_check(
    spec_base: Nonlinearity,
    L1: float,
    L2: float,
    grid: Grid,
    params: SimParams,
    t_grid: Optional[Sequence[float]] = None,
) -> ContinuityReport:
    """Run both amplitudes in lockstep and test the bound at the checked times.

    Without ``t_grid`` every ``params.probe_every``-th step is checked.
    """
    if not 0.0 < L1 <= L2:
        raise DomainError(f"continuity check needs 0 < L1 <= L2, got L1={L1}, L2={L2}")
    c = spec_base.lipschitz_constant()
    advance_1 = Stepper(spec_base.scaled(L1), grid, params)
    advance_2 = Stepper(spec_base.scaled(L2), grid, params)
    u = indicator_ic(grid, 1.0).values
    w = u.copy()

    n_steps = params.n_steps
    if t_grid is None:
        checked = set(range(0, n_steps + 1, params.probe_every)) | {n_steps}
    else:
        checked = {min(int(round(t / params.dt)), n_steps) for t in t_grid}

    times: List[float] = []
    max_excess, min_difference = -math.inf, math.inf
    worst_t = worst_x = 0.0
    for k in range(n_steps + 1):
        if k > 0:
            u = advance_1(u)
            w = advance_2(w)
        if k not in checked:
            continue
        t = k * params.dt
        times.append(t)
        difference = w - u
        excess = difference - continuity_bound(L1, L2, c, t)
        j = int(np.argmax(excess))
        if excess[j] > max_excess:
            max_excess, worst_t, worst_x = float(excess[j]), t, float(grid.x[j])
        min_difference = min(min_difference, float(difference.min()))

    report = ContinuityReport(L1, L2, c, np.asarray(times), max_excess, min_difference, worst_t, worst_x)
    if not report.ok:
        logger.warning(f"continuity bound violated: excess {max_excess:.3g} at t={worst_t:g}, x={worst_x:g}")
    return report


def domination_margin(
    f_spec: Nonlinearity,
    g_spec: Nonlinearity,
    theta1: float,
    eps1: float,
    theta_max: float,
    n_theta: int = 200,
    n_eps: int = 50,
) -> float:
    """min of g(θ + ε(θ − θ₁)) − (1 + ε)f(θ) over [θ₁, θ_max] × [0, ε₁]."""
    if not theta1 > 0.0 or not eps1 > 0.0 or not theta1 < theta_max <= 1.0:
        raise PreconditionError(
            f"domination needs theta1 > 0, eps1 > 0 and theta1 < theta_max <= 1, "
            f"got {theta1}, {eps1}, {theta_max}"
        )
    theta = np.linspace(theta1, theta_max, n_theta)[:, None]
    eps = np.linspace(0.0, eps1, n_eps)[None, :]
    lifted = np.minimum(theta + eps * (theta - theta1), 1.0)
    margin = g_spec.rate(lifted) - (1.0 + eps) * f_spec.rate(theta)
    return float(margin.min())


def check_domination(
    f_spec: Nonlinearity,
    g_spec: Nonlinearity,
    theta1: float,
    eps1: float,
    theta_max: float,
) -> bool:
    return domination_margin(f_spec, g_spec, theta1, eps1, theta_max) >= -DOMINATION_SLACK


def ratio(T: np.ndarray, S: np.ndarray, theta1: float, eps1: float) -> Optional[float]:
    """ω for one pair of fields, or None when no node has T > θ₁."""
    active = T - theta1 > ACTIVE_LEVEL
    if not active.any():
        return None
    quotient = (S[active] - theta1) / (T[active] - theta1)
    return float(min(1.0 + eps1, quotient.min()))


@dataclass
class RatioWitness:
    """ω(t) of a co-evolved pair; ``t_start`` is the first probe with T > θ₁ somewhere."""

    theta1: float
    eps1: float
    times: np.ndarray
    omega_series: np.ndarray
    active: np.ndarray
    theta_max: float
    hypothesis_held: bool
    t_start: Optional[float] = None

    @property
    def terminal(self) -> float:
        return float(self.omega_series[-1])

    @property
    def start_value(self) -> float:
        if self.t_start is None:
            return 1.0 + self.eps1
        return float(self.omega_series[int(np.argmax(self.active))])

    def worst_drop(self) -> float:
        """Largest decrease of ω between consecutive probes after ``t_start``."""
        if self.t_start is None:
            return 0.0
        tail = self.omega_series[int(np.argmax(self.active)) :]
        if tail.size < 2:
            return 0.0
        return float(max(0.0, -np.diff(tail).min()))

    def holds(self, slack: float = MONOTONE_SLACK) -> bool:
        """ω(t) >= ω(t_start) − slack throughout and terminal ω > 1."""
        if self.t_start is None:
            return True
        start = int(np.argmax(self.active))
        return bool(np.all(self.omega_series[start:] >= self.start_value - slack) and self.terminal > 1.0)


def ratio_witness(
    f_spec: Nonlinearity,
    g_spec: Nonlinearity,
    ic_T: Field,
    ic_S: Field,
    theta1: float,
    eps1: float,
    params: SimParams,
    theta_max: float = 1.0,
) -> RatioWitness:
    """Co-evolve T with f and S with g and record ω at every probe.

    Domination is required on [θ₁, θ_max]; if T later exceeds θ_max the
    result is flagged through ``hypothesis_held``.
    """
    grid = ic_T.grid
    if ic_S.grid != grid:
        raise PreconditionError("T and S must share a grid")
    if params.boundary is not Boundary.DIRICHLET:
        raise PreconditionError("ratio witness needs the Dirichlet far field")
    if not check_domination(f_spec, g_spec, theta1, eps1, theta_max):
        raise PreconditionError(
            f"g does not dominate f on [{theta1}, {theta_max}] x [0, {eps1}]"
        )
    if np.any(ic_T.values > ic_S.values) or not np.any(ic_T.values < ic_S.values):
        raise PreconditionError("initial data must satisfy T <= S with strict inequality somewhere")

    advance_T = Stepper(f_spec, grid, params)
    advance_S = Stepper(g_spec, grid, params)
    T, S = ic_T.values.copy(), ic_S.values.copy()

    times: List[float] = []
    omega: List[float] = []
    active: List[bool] = []
    hypothesis_held = bool(T.max() <= theta_max)
    for k in range(params.n_steps + 1):
        if k > 0:
            T = advance_T(T)
            S = advance_S(S)
            if hypothesis_held and T.max() > theta_max:
                hypothesis_held = False
                logger.warning(f"sup T={T.max():.4f} left the dominated range at t={k * params.dt:g}")
        if k % params.probe_every and k != params.n_steps:
            continue
        value = ratio(T, S, theta1, eps1)
        times.append(ic_T.time + k * params.dt)
        active.append(value is not None)
        omega.append(1.0 + eps1 if value is None else value)

    active_arr = np.asarray(active)
    t_start = float(times[int(np.argmax(active_arr))]) if active_arr.any() else None
    witness = RatioWitness(
        theta1=theta1,
        eps1=eps1,
        times=np.asarray(times),
        omega_series=np.asarray(omega),
        active=active_arr,
        theta_max=theta_max,
        hypothesis_held=hypothesis_held,
        t_start=t_start,
    )
    logger.info(
        f"ratio witness: omega {witness.start_value:.6f} -> {witness.terminal:.6f}, worst drop {witness.worst_drop():.2e}"
    )
    return witness


def amplitude_pair_instance(base: Nonlinearity, L1: float, L2: float):
    """(f, g, θ₁, ε₁, θ_max) for comparing amplitudes L1 < L2 of an ignition term."""
    theta0 = base.theta0
    delta = getattr(base, "delta", None)
    if delta is None or theta0 <= 0.0:
        raise PreconditionError(f"{base.kind} has no monotone window above an ignition temperature")
    eps1 = min(L2 / L1 - 1.0, delta / (delta + theta0))
    return base.scaled(L1), base.scaled(L2), 0.5 * theta0, eps1, theta0 + 0.5 * delta


def lockstep_params(params: SimParams, L2: float, spec_base: Nonlinearity) -> SimParams:
    """Shrink dt so that dt·L2·c <= 1 keeps both lockstep runs monotone."""
    c = spec_base.lipschitz_constant() * L2
    if c == 0.0 or params.dt * c <= 1.0:
        return params
    return replace(params, dt=0.5 / c)
