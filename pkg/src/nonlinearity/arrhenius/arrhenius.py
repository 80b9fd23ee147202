"""Arrhenius reaction term."""

from dataclasses import dataclass
from typing import ClassVar, Tuple
import math

import numpy as np

from ..base.base_nonlinearity import Nonlinearity
from ...errors import DomainError

# below this temperature e^{-A/θ} is returned as its limit 0
UNDERFLOW_FLOOR = 1e-8


@dataclass(frozen=True, kw_only=True)
class Arrhenius(Nonlinearity):
    """f(θ) = e^{−A/θ}(1 − θ), with f(0) = 0."""

    A: float = 1.0

    kind: ClassVar[str] = "arrhenius"
    # large A underflows to exact zeros near 0, which samples like an ignition plateau
    expected_patterns: ClassVar[Tuple[str, ...]] = ("positive", "ignition")

    def _validate(self) -> None:
        if not self.A > 0.0:
            raise DomainError(f"activation energy must be positive, got {self.A}")

    def _unit_rate(self, theta: np.ndarray) -> np.ndarray:
        safe = np.maximum(theta, UNDERFLOW_FLOOR)
        return np.where(theta < UNDERFLOW_FLOOR, 0.0, np.exp(-self.A / safe) * (1.0 - theta))

    def _unit_scalar(self, theta: float) -> float:
        if theta < UNDERFLOW_FLOOR:
            return 0.0
        return math.exp(-self.A / theta) * (1.0 - theta)
