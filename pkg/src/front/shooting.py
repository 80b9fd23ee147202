"""Traveling fronts φ(x − vt) of bistable reaction terms by phase-plane shooting.

With ξ = x − vt the profile solves φ″ + vφ′ + f(φ) = 0, φ(−∞) = 1,
φ(+∞) = 0. In the phase plane (φ, ψ = φ′) the front is the orbit leaving the
saddle (1, 0) along its unstable direction and entering the saddle (0, 0).
For a trial speed the launched orbit either reaches φ = 0 while still falling
(speed too small) or turns around with φ > 0 (speed too large).
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple
import logging
import math

import numpy as np

from ..errors import BracketError, ConvergenceError, UnsupportedKindError
from ..nonlinearity import Nonlinearity
from ..solver import Field, Grid

logger = logging.getLogger(__name__)

STEP = 1e-3
STORE_EVERY = 5
LAUNCH_DISTANCE = 1e-8
XI_MAX = 200.0
PROFILE_FLOOR = 1e-6
REST_FLOOR = 1e-10
INTERIOR_MARGIN = 1e-3
MAX_ITER = 200


class Verdict(str, Enum):
    UNDERSHOOT = "undershoot"
    OVERSHOOT = "overshoot"
    STALL = "stall"


@dataclass
class Shot:
    """One launched orbit, sampled every ``STORE_EVERY`` steps."""

    speed: float
    verdict: Verdict
    phis: List[float]
    psis: List[float]


@dataclass(frozen=True, eq=False)
class FrontSolution:
    """Front speed and profile, translated so that φ(0) = 1/2."""

    speed: float
    xs: np.ndarray
    phis: np.ndarray
    shoot_residual: float
    bracket: Tuple[float, float]
    iterations: int

    @property
    def spacing(self) -> float:
        return float(self.xs[1] - self.xs[0])

    def evaluate(self, xi) -> np.ndarray:
        """φ(ξ), held at the end values outside the table."""
        return np.interp(np.asarray(xi, dtype=float), self.xs, self.phis, left=1.0, right=0.0)

    def field_on(self, grid: Grid, position: float = 0.0, time: float = 0.0) -> Field:
        """The front with its 1/2 level at ``position``, sampled on a grid."""
        return Field(grid=grid, time=time, values=np.clip(self.evaluate(grid.x - position), 0.0, 1.0))

    def shifted(self, offset: float) -> "FrontSolution":
        return FrontSolution(
            speed=self.speed,
            xs=self.xs + offset,
            phis=self.phis,
            shoot_residual=self.shoot_residual,
            bracket=self.bracket,
            iterations=self.iterations,
        )

    def table(self) -> np.ndarray:
        """Rows of (ξ, φ)."""
        return np.column_stack([self.xs, self.phis])


def _launch_rate(spec: Nonlinearity, speed: float) -> float:
    slope = spec.sampled_slope(1.0)
    return 0.5 * (-speed + math.sqrt(speed * speed - 4.0 * slope))


def _at_interior_rest(phi: float, psi: float, f) -> bool:
    if not INTERIOR_MARGIN < phi < 1.0 - INTERIOR_MARGIN:
        return False
    return abs(psi) < REST_FLOOR and abs(f(phi)) < REST_FLOOR


def shoot(spec: Nonlinearity, speed: float, step: float = STEP, xi_max: float = XI_MAX) -> Shot:
    """Integrate from the unstable direction at (1, 0) with classical RK4."""
    f = spec.scalar
    mu = _launch_rate(spec, speed)
    phi, psi = 1.0 - LAUNCH_DISTANCE, -LAUNCH_DISTANCE * mu
    phis, psis = [phi], [psi]
    half = 0.5 * step
    v = speed

    for n in range(1, int(xi_max / step) + 1):
        k1p, k1q = psi, -v * psi - f(phi)
        p, q = phi + half * k1p, psi + half * k1q
        k2p, k2q = q, -v * q - f(p)
        p, q = phi + half * k2p, psi + half * k2q
        k3p, k3q = q, -v * q - f(p)
        p, q = phi + step * k3p, psi + step * k3q
        k4p, k4q = q, -v * q - f(p)
        phi += step / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        psi += step / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q)

        # entering φ < 0 is an undershoot even if ψ would recover later
        if phi <= 0.0:
            return Shot(speed, Verdict.UNDERSHOOT, phis, psis)
        if psi >= 0.0:
            return Shot(speed, Verdict.OVERSHOOT, phis, psis)
        # resting at an interior zero of f: the orbit never reaches φ = 0
        if _at_interior_rest(phi, psi, f):
            return Shot(speed, Verdict.OVERSHOOT, phis, psis)
        if n % STORE_EVERY == 0:
            phis.append(phi)
            psis.append(psi)

    if phi > INTERIOR_MARGIN:
        return Shot(speed, Verdict.OVERSHOOT, phis, psis)
    return Shot(speed, Verdict.STALL, phis, psis)


def _check_bistable(spec: Nonlinearity) -> None:
    low, high = spec.sampled_slope(0.0), spec.sampled_slope(1.0)
    if not (low < 0.0 and high < 0.0):
        raise UnsupportedKindError(
            f"{spec.kind}: fronts need stable states 0 and 1, sampled f'(0)={low:.3g}, f'(1)={high:.3g}"
        )


def profile_residual(xs: np.ndarray, phis: np.ndarray, speed: float, spec: Nonlinearity) -> float:
    """sup |φ″ + vφ′ + f(φ)| from centred differences on the stored spacing."""
    if phis.size < 3:
        return float("inf")
    d = float(xs[1] - xs[0])
    second = (phis[2:] - 2.0 * phis[1:-1] + phis[:-2]) / (d * d)
    first = (phis[2:] - phis[:-2]) / (2.0 * d)
    return float(np.max(np.abs(second + speed * first + spec.rate(phis[1:-1]))))


def _assemble(spec: Nonlinearity, shot: Shot, bracket: Tuple[float, float], iterations: int, step: float) -> FrontSolution:
    phis = np.asarray(shot.phis)
    keep = int(np.argmax(phis < PROFILE_FLOOR)) if np.any(phis < PROFILE_FLOOR) else phis.size
    phis = phis[:keep]
    spacing = step * STORE_EVERY
    xs = spacing * np.arange(phis.size)
    # φ is decreasing, so the 1/2 crossing is found by interpolating the reversed table
    centre = float(np.interp(0.5, phis[::-1], xs[::-1]))
    xs = xs - centre
    return FrontSolution(
        speed=shot.speed,
        xs=xs,
        phis=phis,
        shoot_residual=profile_residual(xs, phis, shot.speed, spec),
        bracket=bracket,
        iterations=iterations,
    )


def front_speed(spec: Nonlinearity, tol: float = 1e-6, step: float = STEP, v_max: Optional[float] = None) -> FrontSolution:
    """Bisect on the speed until the over/undershoot bracket is narrower than ``tol``."""
    _check_bistable(spec)
    if v_max is None:
        v_max = 2.0 * math.sqrt(spec.lipschitz_constant())
    v_lo, v_hi = -v_max, v_max

    low_shot = shoot(spec, v_lo, step)
    high_shot = shoot(spec, v_hi, step)
    if low_shot.verdict is not Verdict.UNDERSHOOT or high_shot.verdict is Verdict.UNDERSHOOT:
        raise BracketError(
            f"no sign change on [{v_lo:.4g}, {v_hi:.4g}]: {low_shot.verdict.value} / {high_shot.verdict.value}"
        )

    iterations = 0
    while v_hi - v_lo > tol:
        if iterations >= MAX_ITER:
            raise ConvergenceError(f"front speed bracket [{v_lo}, {v_hi}] did not reach tol={tol}")
        iterations += 1
        mid = 0.5 * (v_lo + v_hi)
        shot = shoot(spec, mid, step)
        if shot.verdict is Verdict.UNDERSHOOT:
            v_lo = mid
        else:
            v_hi = mid
        logger.debug(f"front shot {iterations}: v={mid:.9f} {shot.verdict.value}")

    speed = 0.5 * (v_lo + v_hi)
    final = shoot(spec, speed, step)
    solution = _assemble(spec, final, (v_lo, v_hi), iterations, step)
    logger.info(f"front for {spec.kind}: v={speed:.8f} after {iterations} bisections, residual {solution.shoot_residual:.2e}")
    return solution
