"""Bistable reaction terms: f < 0 on (0, θ₀), f > 0 on (θ₀, 1)."""

from dataclasses import dataclass
from typing import ClassVar, Tuple
import math

import numpy as np

from ..base.base_nonlinearity import Nonlinearity
from ...errors import DomainError


@dataclass(frozen=True, kw_only=True)
class BistableCubic(Nonlinearity):
    """f(θ) = θ(θ − a)(1 − θ).

    ∫₀¹ f = 1/12 − a/6 is positive exactly when a < 1/2; larger ``a`` is
    accepted so that receding fronts can be computed.
    """

    a: float = 0.25

    kind: ClassVar[str] = "bistable"
    expected_patterns: ClassVar[Tuple[str, ...]] = ("bistable",)

    def _validate(self) -> None:
        if not 0.0 < self.a < 1.0:
            raise DomainError(f"bistable zero must lie in (0, 1), got {self.a}")

    @property
    def theta0(self) -> float:
        return self.a

    def _unit_rate(self, theta: np.ndarray) -> np.ndarray:
        return theta * (theta - self.a) * (1.0 - theta)

    def _unit_scalar(self, theta: float) -> float:
        return theta * (theta - self.a) * (1.0 - theta)

    def _unit_potential(self, theta: np.ndarray) -> np.ndarray:
        a = self.a
        return -(theta**4) / 4.0 + (1.0 + a) * theta**3 / 3.0 - a * theta**2 / 2.0

    def _unit_lipschitz(self) -> float:
        a = self.a
        # f' = -3θ² + 2(1+a)θ - a is a downward parabola with vertex at (1+a)/3
        slope = max(a, 1.0 - a, (1.0 + a) ** 2 / 3.0 - a)
        disc = math.sqrt((1.0 + a) ** 2 - 3.0 * a)
        extremes = [(1.0 + a - disc) / 3.0, (1.0 + a + disc) / 3.0]
        height = max(abs(self._unit_scalar(t)) for t in extremes)
        return max(slope, height)


@dataclass(frozen=True, kw_only=True)
class DampedBistable(Nonlinearity):
    """Ignition hump above θ₀ with a negative lobe −κθ(θ₀ − θ) below it.

    As κ → 0 this tends to ``Ignition(theta0)``: θ₂ → θ₀ and the bump
    flattens onto the constant θ₀.
    """

    theta0: float = 0.3
    kappa: float = 0.1

    kind: ClassVar[str] = "damped_bistable"
    expected_patterns: ClassVar[Tuple[str, ...]] = ("bistable",)

    def _validate(self) -> None:
        if not 0.0 < self.theta0 < 1.0:
            raise DomainError(f"theta0 must lie in (0, 1), got {self.theta0}")
        if not self.kappa > 0.0:
            raise DomainError(f"kappa must be positive, got {self.kappa}")

    def _unit_rate(self, theta: np.ndarray) -> np.ndarray:
        t0 = self.theta0
        return np.where(theta > t0, (theta - t0) * (1.0 - theta), -self.kappa * theta * (t0 - theta))

    def _unit_scalar(self, theta: float) -> float:
        t0 = self.theta0
        if theta > t0:
            return (theta - t0) * (1.0 - theta)
        return -self.kappa * theta * (t0 - theta)

    def _unit_potential(self, theta: np.ndarray) -> np.ndarray:
        t0, k = self.theta0, self.kappa
        low = np.minimum(theta, t0)
        below = -k * (t0 * low**2 / 2.0 - low**3 / 3.0)
        w = np.clip(theta - t0, 0.0, None)
        above = (1.0 - t0) * w**2 / 2.0 - w**3 / 3.0
        return below + above

    def _unit_lipschitz(self) -> float:
        t0, k = self.theta0, self.kappa
        b = 1.0 - t0
        return max(k * t0, b, k * t0**2 / 4.0, b * b / 4.0)
