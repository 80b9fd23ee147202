"""The even stationary bump 0 = U″ + f(U), U(0) = θ₂, U(±∞) = 0.

The profile is obtained by inverting the first integral
½U′² = F(θ₂) − F(U): for each level u the position is

    x(u) = ∫_u^{θ₂} dθ / √(2[F(θ₂) − F(θ)]).

Near the crest the integrand blows up like (θ₂ − θ)^{-1/2}; the substitution
θ = θ₂ − s² turns it into √(2/m(s)) with m the mean of f over
[θ₂ − s², θ₂], which is bounded. Below θ₂/2 the table is parameterized by
ln U so the exponentially decaying tail is resolved uniformly.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import List
import logging
import math

import numpy as np
from scipy import integrate
from scipy.interpolate import CubicHermiteSpline

from ..errors import DegenerateBalanceError, ResolutionError
from ..nonlinearity import Nonlinearity
from ..solver import Field, Grid

logger = logging.getLogger(__name__)

U_MIN = 1e-6
CREST_NODES = 2000
TAIL_STEP = 0.004
# below this crest width F(θ₂) − F(θ) is formed by Gauss-Legendre, not by differencing
CREST_SWITCH = 1e-4
RESIDUAL_STEP = 0.005
MIN_RESIDUAL_POINTS = 100


@dataclass(frozen=True, eq=False)
class StationaryProfile:
    """Tabulated bump on x >= 0; evaluation mirrors it to x < 0."""

    theta2: float
    xs: np.ndarray
    us: np.ndarray
    dus: np.ndarray
    decay_rate: float

    @cached_property
    def _spline(self) -> CubicHermiteSpline:
        return CubicHermiteSpline(self.xs, self.us, self.dus)

    @property
    def x_end(self) -> float:
        return float(self.xs[-1])

    def __len__(self) -> int:
        return int(self.xs.size)

    def evaluate(self, x) -> np.ndarray:
        """U(x) for any real x, with the exponential tail beyond the table."""
        r = np.abs(np.asarray(x, dtype=float))
        inside = r <= self.x_end
        tail = self.us[-1] * np.exp(-self.decay_rate * np.maximum(r - self.x_end, 0.0))
        return np.where(inside, self._spline(np.minimum(r, self.x_end)), tail)

    def derivative(self, x) -> np.ndarray:
        """U′(x); odd in x."""
        x = np.asarray(x, dtype=float)
        r = np.abs(x)
        inside = r <= self.x_end
        tail = -self.decay_rate * self.us[-1] * np.exp(-self.decay_rate * np.maximum(r - self.x_end, 0.0))
        values = np.where(inside, self._spline(np.minimum(r, self.x_end), 1), tail)
        return np.sign(x) * values

    def field_on(self, grid: Grid, time: float = 0.0) -> Field:
        """The mirrored bump sampled on a solver grid."""
        return Field(grid=grid, time=time, values=np.clip(self.evaluate(grid.x), 0.0, 1.0))

    def table(self) -> np.ndarray:
        """Rows of (x, U, U′)."""
        return np.column_stack([self.xs, self.us, self.dus])


def _crest_mean(spec: Nonlinearity, theta2: float, F2: float, s: float) -> float:
    width = s * s
    if width <= CREST_SWITCH:
        return spec.mean_rate(theta2 - width, theta2)
    return (F2 - spec.potential(theta2 - width)) / width


def solve_bump(spec: Nonlinearity, tol: float = 1e-12, u_min: float = U_MIN) -> StationaryProfile:
    """Tabulate U from θ₂ down to ``u_min`` and fit the exponential tail."""
    theta2 = spec.theta2()
    f2 = spec.scalar(theta2)
    if not f2 > 0.0:
        raise DegenerateBalanceError(f"f(theta2) = {f2:.3g} must be positive for a bump to exist")
    F2 = spec.potential(theta2)

    def crest_mean(s: float) -> float:
        return _crest_mean(spec, theta2, F2, s)

    def crest_integrand(s: float) -> float:
        return math.sqrt(2.0 / crest_mean(s))

    half = 0.5 * theta2
    s_nodes = np.linspace(0.0, math.sqrt(theta2 - half), CREST_NODES + 1)
    crest_dx = [
        integrate.quad(crest_integrand, a, b, epsabs=tol, epsrel=0.0, limit=100)[0]
        for a, b in zip(s_nodes[:-1], s_nodes[1:])
    ]
    crest_x = np.concatenate(([0.0], np.cumsum(crest_dx)))
    crest_u = theta2 - s_nodes**2
    crest_du = np.array([-s * math.sqrt(2.0 * crest_mean(s)) if s > 0.0 else 0.0 for s in s_nodes])
    crest_u[-1] = half

    def tail_gap(u: float) -> float:
        # F(θ₂) = 0, so the gap is −F(u); differencing would lose the deep tail
        return -float(spec.potential(u))

    def tail_integrand(v: float) -> float:
        u = math.exp(v)
        return u / math.sqrt(2.0 * tail_gap(u))

    v_top, v_bottom = math.log(half), math.log(u_min)
    n_tail = max(int(math.ceil((v_top - v_bottom) / TAIL_STEP)), 1)
    v_nodes = np.linspace(v_top, v_bottom, n_tail + 1)
    tail_dx = [
        integrate.quad(tail_integrand, b, a, epsabs=tol, epsrel=0.0, limit=100)[0]
        for a, b in zip(v_nodes[:-1], v_nodes[1:])
    ]
    tail_x = crest_x[-1] + np.cumsum(tail_dx)
    tail_u = np.exp(v_nodes[1:])
    tail_du = np.array([-math.sqrt(2.0 * tail_gap(u)) for u in tail_u])

    xs = np.concatenate((crest_x, tail_x))
    us = np.concatenate((crest_u, tail_u))
    dus = np.concatenate((crest_du, tail_du))
    decay_rate = float(-dus[-1] / us[-1])
    logger.info(f"bump for {spec.kind}: theta2={theta2:.10f}, {xs.size} nodes to x={xs[-1]:.3f}")
    return StationaryProfile(theta2=theta2, xs=xs, us=us, dus=dus, decay_rate=decay_rate)


def _second_differences(profile: StationaryProfile, hx: float):
    n = int(profile.x_end / hx)
    if n + 1 < MIN_RESIDUAL_POINTS or len(profile) < MIN_RESIDUAL_POINTS:
        raise ResolutionError(
            f"profile needs at least {MIN_RESIDUAL_POINTS} points for a residual, "
            f"got {len(profile)} nodes and {n + 1} resample points"
        )
    x = hx * np.arange(n)
    u = profile.evaluate(np.concatenate(([-hx], x, [x[-1] + hx])))
    return x, u[1:-1], (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (hx * hx)


def residual(profile: StationaryProfile, spec: Nonlinearity, hx: float = RESIDUAL_STEP) -> float:
    """sup |U″ + f(U)| from centred second differences on a uniform resample."""
    _, u, second = _second_differences(profile, hx)
    return float(np.max(np.abs(second + spec.rate(np.clip(u, 0.0, 1.0)))))


def energy_defect(profile: StationaryProfile, spec: Nonlinearity) -> float:
    """Largest violation of ∫_U^{θ₂} f = ½U′² over the table nodes."""
    gap = spec.potential(profile.theta2) - spec.potential(np.clip(profile.us, 0.0, 1.0))
    return float(np.max(np.abs(gap - 0.5 * profile.dus**2)))


@dataclass
class BellShapeReport:
    """Outcome of the bell-shape checks; ``problems`` lists every failed check."""

    decreasing: bool
    crest_ok: bool
    inflection_x: float
    inflection_value: float
    inflection_tolerance: float
    inflection_ok: bool
    derivative_shape_ok: bool
    tail_rate: float
    tail_expected: float
    tail_ok: bool
    problems: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.problems


def bell_shape_check(
    profile: StationaryProfile,
    spec: Nonlinearity,
    hx: float = RESIDUAL_STEP,
    tail_rtol: float = 1e-3,
) -> BellShapeReport:
    """Check U′ < 0, the inflection at U = θ₀, the shape of U′ and the tail rate."""
    problems: List[str] = []

    decreasing = bool(np.all(profile.dus[1:] < 0.0) and np.all(np.diff(profile.us) < 0.0) and np.all(profile.us > 0.0))
    if not decreasing:
        problems.append("U is not positive and strictly decreasing on x > 0")
    crest_ok = bool(profile.us[0] == profile.theta2 and profile.dus[0] == 0.0)
    if not crest_ok:
        problems.append("crest is not U(0) = theta2, U'(0) = 0")

    x, u, second = _second_differences(profile, hx)
    change = np.flatnonzero((second[:-1] < 0.0) & (second[1:] >= 0.0))
    inflection_x = inflection_value = float("nan")
    tolerance = float("nan")
    inflection_ok = derivative_shape_ok = False
    if change.size == 0:
        problems.append("no inflection point found")
    else:
        j = int(change[0])
        inflection_x = float(x[j] + hx * second[j] / (second[j] - second[j + 1]))
        inflection_value = float(profile.evaluate(inflection_x))
        tolerance = float(abs(profile.derivative(inflection_x)) * hx)
        inflection_ok = abs(inflection_value - spec.theta0) <= tolerance
        if not inflection_ok:
            problems.append(f"inflection at U={inflection_value:.6f}, expected theta0={spec.theta0:.6f}")
        slope = profile.derivative(x)
        steps = np.diff(slope)
        cut = int(np.searchsorted(x, inflection_x))
        # U′ decreases up to the inflection point and increases after it
        derivative_shape_ok = bool(np.all(steps[: max(cut - 1, 0)] <= 1e-12) and np.all(steps[cut + 1 :] >= -1e-12))
        if not derivative_shape_ok:
            problems.append("U' is not decreasing then increasing around the inflection point")

    tail_rate = float(profile.dus[-1] / profile.us[-1])
    slope0 = spec.sampled_slope(0.0)
    tail_expected = -math.sqrt(-slope0) if slope0 < 0.0 else 0.0
    tail_ok = slope0 < 0.0 and abs(tail_rate - tail_expected) <= tail_rtol * abs(tail_expected)
    if not tail_ok:
        problems.append(f"tail rate U'/U={tail_rate:.6f}, linearization gives {tail_expected:.6f}")

    return BellShapeReport(
        decreasing=decreasing,
        crest_ok=crest_ok,
        inflection_x=inflection_x,
        inflection_value=inflection_value,
        inflection_tolerance=tolerance,
        inflection_ok=inflection_ok,
        derivative_shape_ok=derivative_shape_ok,
        tail_rate=tail_rate,
        tail_expected=tail_expected,
        tail_ok=tail_ok,
        problems=problems,
    )

