"""KPP (logistic) and power-combustion reaction terms."""

from dataclasses import dataclass
from typing import ClassVar, Tuple

import numpy as np

from ..base.base_nonlinearity import Nonlinearity
from ...errors import DomainError


@dataclass(frozen=True, kw_only=True)
class KPP(Nonlinearity):
    """f(θ) = θ^p (1 − θ); p = 1 is the logistic KPP term.

    For p < 3 small data propagate (hair trigger); for p > 3 they die out.
    """

    p: float = 1.0

    kind: ClassVar[str] = "kpp"
    expected_patterns: ClassVar[Tuple[str, ...]] = ("positive",)

    def _validate(self) -> None:
        if not self.p >= 1.0:
            raise DomainError(f"KPP exponent must be >= 1, got {self.p}")

    def _unit_rate(self, theta: np.ndarray) -> np.ndarray:
        return theta**self.p * (1.0 - theta)

    def _unit_scalar(self, theta: float) -> float:
        return theta**self.p * (1.0 - theta)

    def _unit_potential(self, theta: np.ndarray) -> np.ndarray:
        p = self.p
        return theta ** (p + 1.0) / (p + 1.0) - theta ** (p + 2.0) / (p + 2.0)

    def _unit_lipschitz(self) -> float:
        # f'(1) = -1 for every p >= 1; the interior maximum of f' is ((p-1)/(p+1))^(p-1) <= 1
        return 1.0
