"""Ignition reaction term: no reaction below the ignition temperature."""

from dataclasses import dataclass
from typing import ClassVar, Tuple

import numpy as np

from ..base.base_nonlinearity import Nonlinearity
from ...errors import DomainError


@dataclass(frozen=True, kw_only=True)
class Ignition(Nonlinearity):
    """f(θ) = (θ − θ₀)(1 − θ) on (θ₀, 1) and 0 on [0, θ₀].

    The hump is non-decreasing on [θ₀, θ₀ + δ] with δ = (1 − θ₀)/2.
    Other hump shapes are available through ``Tabulated``.
    """

    theta0: float = 0.3

    kind: ClassVar[str] = "ignition"
    expected_patterns: ClassVar[Tuple[str, ...]] = ("ignition",)

    def _validate(self) -> None:
        if not 0.0 < self.theta0 < 1.0:
            raise DomainError(f"ignition temperature must lie in (0, 1), got {self.theta0}")

    @property
    def delta(self) -> float:
        """Width of the interval above θ₀ on which f is non-decreasing."""
        return 0.5 * (1.0 - self.theta0)

    def _unit_rate(self, theta: np.ndarray) -> np.ndarray:
        return np.where(theta > self.theta0, (theta - self.theta0) * (1.0 - theta), 0.0)

    def _unit_scalar(self, theta: float) -> float:
        if theta <= self.theta0:
            return 0.0
        return (theta - self.theta0) * (1.0 - theta)

    def _unit_potential(self, theta: np.ndarray) -> np.ndarray:
        w = np.clip(theta - self.theta0, 0.0, None)
        b = 1.0 - self.theta0
        return b * w**2 / 2.0 - w**3 / 3.0

    def _unit_lipschitz(self) -> float:
        # |f'| = |1 + θ₀ − 2θ| peaks at both ends of (θ₀, 1); sup f = (1 − θ₀)²/4
        b = 1.0 - self.theta0
        return max(b, b * b / 4.0)
