"""Base class for all reaction terms."""

from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, replace
from functools import cached_property
from typing import Any, ClassVar, Dict, Tuple, Union
import logging

import numpy as np
from scipy import integrate, optimize

from ...errors import DomainError, SignPatternError, UnsupportedKindError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

SCAN_POINTS = 10_001
QUAD_TOL = 1e-12
THETA2_XTOL = 1e-14
# secant scans under-estimate sup|f'| by O(h^2); the margin keeps the bound an over-estimate
SCAN_MARGIN = 0.01
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)


@dataclass(frozen=True)
class SignPattern:
    """Sampled sign structure of a reaction term on (0, 1)."""

    pattern: str  # ignition, positive, bistable, other
    crossing: float
    description: str


@dataclass(frozen=True, kw_only=True)
class Nonlinearity(ABC):
    """A reaction term f on [0, 1] with f(0) = f(1) = 0, scaled by ``amplitude``."""

    amplitude: float = 1.0

    kind: ClassVar[str] = "abstract"
    expected_patterns: ClassVar[Tuple[str, ...]] = ()

    def __post_init__(self):
        if not np.isfinite(self.amplitude) or self.amplitude < 0:
            raise DomainError(f"amplitude must be a finite non-negative number, got {self.amplitude}")
        self._validate()
        self.check_sign_pattern()

    def _validate(self) -> None:
        """Check kind-specific parameters."""

    @abstractmethod
    def _unit_rate(self, theta: np.ndarray) -> np.ndarray:
        """Reaction rate with unit amplitude, vectorized, no domain checks."""

    def _unit_scalar(self, theta: float) -> float:
        """Scalar fast path used by the phase-plane integrator."""
        return float(self._unit_rate(np.asarray(theta, dtype=float)))

    def _unit_potential(self, theta: np.ndarray) -> np.ndarray:
        """Antiderivative of the unit rate by adaptive quadrature."""

        def one(upper: float) -> float:
            if upper == 0.0:
                return 0.0
            value, _ = integrate.quad(
                self._unit_scalar, 0.0, upper, epsabs=QUAD_TOL, epsrel=0.0, limit=200
            )
            return value

        return np.vectorize(one, otypes=[float])(theta)

    def _unit_lipschitz(self) -> float:
        """Dense-grid slope scan; kinds with closed forms override this."""
        grid = np.linspace(0.0, 1.0, SCAN_POINTS)
        values = self._unit_rate(grid)
        slopes = np.abs(np.diff(values)) / np.diff(grid)
        return float(max(slopes.max(), np.abs(values).max()) * (1.0 + SCAN_MARGIN))

    @property
    def theta0(self) -> float:
        """Largest zero of f below which f <= 0 (ignition temperature, bistable zero)."""
        return 0.0

    @staticmethod
    def _as_theta(theta: ArrayLike) -> np.ndarray:
        arr = np.asarray(theta, dtype=float)
        if not np.all(np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
            raise DomainError(f"temperature must lie in [0, 1], got {theta}")
        return arr

    @staticmethod
    def _unwrap(arr: np.ndarray) -> ArrayLike:
        return float(arr) if arr.ndim == 0 else arr

    def rate(self, theta: np.ndarray) -> np.ndarray:
        """Vectorized amplitude-scaled rate without domain checks (solver hot path)."""
        return self.amplitude * self._unit_rate(theta)

    def scalar(self, theta: float) -> float:
        """Amplitude-scaled rate for a single float without domain checks."""
        return self.amplitude * self._unit_scalar(theta)

    def eval_f(self, theta: ArrayLike) -> ArrayLike:
        """Evaluate amplitude * f(theta) for theta in [0, 1]."""
        arr = self._as_theta(theta)
        return self._unwrap(self.amplitude * self._unit_rate(arr))

    def potential(self, theta: ArrayLike) -> ArrayLike:
        """F(theta) = integral of f from 0 to theta."""
        arr = self._as_theta(theta)
        return self._unwrap(self.amplitude * self._unit_potential(arr))

    def mean_rate(self, lo: float, hi: float) -> float:
        """Average of f over [lo, hi] by 16-point Gauss-Legendre quadrature.

        Used instead of a difference of potentials where hi - lo is small,
        since that difference cancels catastrophically.
        """
        if hi == lo:
            return self.scalar(lo)
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        return float(0.5 * np.dot(_GL_WEIGHTS, self.rate(mid + half * _GL_NODES)))

    def theta2(self) -> float:
        """Balance temperature: the root of F in (theta0, 1)."""
        lo = self.theta0

        def unit_f(t: float) -> float:
            return float(self._unit_potential(np.asarray(t, dtype=float)))

        if not unit_f(lo) < 0.0:
            raise UnsupportedKindError(f"{self.kind}: F >= 0 on [0, 1], no balance temperature")
        if not unit_f(1.0) > 0.0:
            raise UnsupportedKindError(f"{self.kind}: integral of f over [0, 1] is not positive")
        root = optimize.bisect(unit_f, lo, 1.0, xtol=THETA2_XTOL)
        logger.debug(f"theta2 for {self.kind}: {root:.15f}")
        return float(root)

    @cached_property
    def _lipschitz(self) -> float:
        if self.amplitude == 0.0:
            return 0.0
        return self.amplitude * self._unit_lipschitz()

    def lipschitz_constant(self) -> float:
        """c = max(sup|f'|, sup|f|), an over-estimate of both."""
        return self._lipschitz

    def sampled_slope(self, theta: float, h: float = 1e-6) -> float:
        """One-sided difference quotient of f, pointing into [0, 1]."""
        if theta + h <= 1.0:
            return (self.scalar(theta + h) - self.scalar(theta)) / h
        return (self.scalar(theta) - self.scalar(theta - h)) / h

    def check_sign_pattern(self) -> SignPattern:
        """Sample f densely, classify its sign structure and match it to the kind."""
        grid = np.linspace(0.0, 1.0, SCAN_POINTS)
        values = self._unit_rate(grid)
        if not np.all(np.isfinite(values)):
            raise SignPatternError(f"{self.kind}: non-finite samples")
        if values[0] != 0.0 or values[-1] != 0.0:
            raise SignPatternError(f"{self.kind}: f(0) and f(1) must vanish exactly")

        inner, xs = values[1:-1], grid[1:-1]
        positive = inner > 0.0
        report = SignPattern("other", float("nan"), "no recognised pattern")
        if positive.all():
            report = SignPattern("positive", 0.0, "positive on (0,1)")
        elif positive.any():
            first = int(np.argmax(positive))
            head = inner[:first]
            if positive[first:].all() and first > 0:
                crossing = 0.5 * (xs[first - 1] + xs[first])
                nonzero = np.flatnonzero(head != 0.0)
                if nonzero.size == 0:
                    report = SignPattern(
                        "ignition", crossing, f"zero on [0,{crossing:.3g}], positive on ({crossing:.3g},1)"
                    )
                elif head[0] < 0.0 and (head[: nonzero[-1] + 1] < 0.0).all():
                    report = SignPattern(
                        "bistable", crossing, f"negative on (0,{crossing:.3g}), positive on ({crossing:.3g},1)"
                    )

        if report.pattern not in self.expected_patterns:
            raise SignPatternError(
                f"{self.kind} declared but sampled pattern is '{report.pattern}' ({report.description})"
            )
        return report

    def scaled(self, factor: float) -> "Nonlinearity":
        """Same kind with the amplitude multiplied by ``factor``."""
        return replace(self, amplitude=self.amplitude * factor)

    def with_amplitude(self, amplitude: float) -> "Nonlinearity":
        return replace(self, amplitude=amplitude)

    def describe(self) -> Dict[str, Any]:
        """Plain mapping for JSON summaries."""
        return {"kind": self.kind, **asdict(self)}
