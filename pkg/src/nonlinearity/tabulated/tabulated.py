"""Piecewise-linear reaction term given by breakpoints."""

from dataclasses import dataclass
from functools import cached_property
from typing import ClassVar, Dict, Sequence, Tuple
import math

import numpy as np

from ..base.base_nonlinearity import Nonlinearity
from ...errors import DomainError, UnsupportedKindError

_DECLARED_PATTERNS: Dict[str, Tuple[str, ...]] = {
    "ignition": ("ignition",),
    "kpp": ("positive",),
    "combustion": ("positive",),
    "bistable": ("bistable",),
}


@dataclass(frozen=True, kw_only=True)
class Tabulated(Nonlinearity):
    """Linear interpolation through (θ_k, f_k) with θ_0 = 0 and θ_n = 1.

    ``declared`` names the family the table is meant to belong to; the
    sampled sign pattern must agree with it.
    """

    thetas: Tuple[float, ...] = (0.0, 1.0)
    values: Tuple[float, ...] = (0.0, 0.0)
    declared: str = "bistable"

    kind: ClassVar[str] = "tabulated"

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[float]], declared: str = "bistable", amplitude: float = 1.0) -> "Tabulated":
        thetas = tuple(float(t) for t, _ in pairs)
        values = tuple(float(v) for _, v in pairs)
        return cls(thetas=thetas, values=values, declared=declared, amplitude=amplitude)

    @property
    def expected_patterns(self) -> Tuple[str, ...]:  # type: ignore[override]
        return _DECLARED_PATTERNS[self.declared]

    def _validate(self) -> None:
        if self.declared not in _DECLARED_PATTERNS:
            raise DomainError(f"unknown declared family '{self.declared}'")
        t = np.asarray(self.thetas, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.size < 2 or t.size != v.size:
            raise DomainError("table needs at least two (theta, f) pairs of equal length")
        if t[0] != 0.0 or t[-1] != 1.0 or np.any(np.diff(t) <= 0.0):
            raise DomainError("table abscissae must increase strictly from 0 to 1")
        if not np.all(np.isfinite(v)):
            raise DomainError("table values must be finite")

    @cached_property
    def _t(self) -> np.ndarray:
        return np.asarray(self.thetas, dtype=float)

    @cached_property
    def _v(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    @cached_property
    def _slopes(self) -> np.ndarray:
        return np.diff(self._v) / np.diff(self._t)

    @cached_property
    def _cumulative(self) -> np.ndarray:
        pieces = 0.5 * (self._v[1:] + self._v[:-1]) * np.diff(self._t)
        return np.concatenate(([0.0], np.cumsum(pieces)))

    @property
    def theta0(self) -> float:
        v, t = self._v, self._t
        nonpositive = np.flatnonzero(v[:-1] <= 0.0)
        last = int(nonpositive[-1]) if nonpositive.size else 0
        if v[last] < 0.0 and v[last + 1] > 0.0:
            return float(t[last] - v[last] / self._slopes[last])
        return float(t[last])

    def _unit_rate(self, theta: np.ndarray) -> np.ndarray:
        return np.interp(theta, self._t, self._v)

    def _unit_scalar(self, theta: float) -> float:
        return float(np.interp(theta, self._t, self._v))

    def _unit_potential(self, theta: np.ndarray) -> np.ndarray:
        k = np.clip(np.searchsorted(self._t, theta, side="right") - 1, 0, self._t.size - 2)
        s = theta - self._t[k]
        return self._cumulative[k] + s * self._v[k] + 0.5 * self._slopes[k] * s * s

    def _unit_lipschitz(self) -> float:
        return float(max(np.abs(self._slopes).max(), np.abs(self._v).max()))

    def mean_rate(self, lo: float, hi: float) -> float:
        if hi - lo <= 1e-9:
            return self.scalar(0.5 * (lo + hi))
        return (self.potential(hi) - self.potential(lo)) / (hi - lo)

    def theta2(self) -> float:
        """Root of the piecewise-quadratic potential, solved exactly on its segment."""
        cum = self._cumulative
        start = int(np.argmin(cum))
        if not cum[start] < 0.0:
            raise UnsupportedKindError("tabulated: F >= 0 on [0, 1], no balance temperature")
        if not cum[-1] > 0.0:
            raise UnsupportedKindError("tabulated: integral of f over [0, 1] is not positive")
        k = start + int(np.argmax(cum[start:] > 0.0)) - 1
        c, v, m = cum[k], self._v[k], self._slopes[k]
        width = self._t[k + 1] - self._t[k]
        if m == 0.0:
            s = -c / v
        else:
            disc = math.sqrt(max(v * v - 2.0 * m * c, 0.0))
            roots = [(-v + disc) / m, (-v - disc) / m]
            inside = [r for r in roots if -1e-15 <= r <= width + 1e-15]
            s = min(inside) if inside else roots[0]
        return float(self._t[k] + min(max(s, 0.0), width))
