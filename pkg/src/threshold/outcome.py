"""Long-time fate of an indicator-data trajectory."""

from dataclasses import asdict, dataclass
from typing import Any, ClassVar, Dict, Optional, Tuple
import logging

import numpy as np

from ..errors import InsufficientDataError
from ..nonlinearity import Nonlinearity
from ..solver import ProbeRecorder, ProbeSet, Trajectory

logger = logging.getLogger(__name__)

MIN_SAMPLES = 10
CONFIRM_LEVEL = 0.99
RADIUS_LEVEL = 0.5


@dataclass(frozen=True)
class Outcome:
    """Base of the four classified fates; ``rank`` orders them along L."""

    label: ClassVar[str] = "outcome"
    rank: ClassVar[int] = 1

    def to_dict(self) -> Dict[str, Any]:
        return {"outcome": self.label, **asdict(self)}


@dataclass(frozen=True)
class Extinction(Outcome):
    t_ext: float

    label: ClassVar[str] = "extinction"
    rank: ClassVar[int] = 0


@dataclass(frozen=True)
class Propagation(Outcome):
    t_prop: float

    label: ClassVar[str] = "propagation"
    rank: ClassVar[int] = 2


@dataclass(frozen=True)
class NearCritical(Outcome):
    plateau_level: float
    plateau_span: float
    profile_distance: float

    label: ClassVar[str] = "near_critical"


@dataclass(frozen=True)
class Undetermined(Outcome):
    horizon: float

    label: ClassVar[str] = "undetermined"


@dataclass(frozen=True)
class OutcomeCriteria:
    """Decision levels for one reaction term.

    ``ext_level`` below θ₀ is absorbing when θ₀ > 0; with θ₀ = 0 a small
    sup-norm is only decisive at the horizon.
    """

    theta0: float
    prop_level: float
    confirm_level: float
    ext_level: float
    band_width: float = 0.05
    plateau_span: float = 10.0
    window: float = 1.0
    plateau_target: Optional[float] = None
    decision_time: float = 2.0

    @property
    def absorbing_extinction(self) -> bool:
        return self.theta0 > 0.0

    @classmethod
    def for_spec(
        cls,
        spec: Nonlinearity,
        t_max: float,
        band_width: float = 0.05,
        window: Optional[float] = None,
        plateau_span: Optional[float] = None,
    ) -> "OutcomeCriteria":
        pattern = spec.check_sign_pattern().pattern
        theta0 = spec.theta0
        span = plateau_span if plateau_span is not None else 0.25 * t_max
        if pattern == "bistable":
            theta2 = spec.theta2()
            return cls(
                theta0=theta0,
                prop_level=0.5 * (1.0 + theta2),
                confirm_level=CONFIRM_LEVEL,
                ext_level=0.9 * theta0,
                band_width=band_width,
                plateau_span=span,
                window=window if window is not None else 5.0,
                plateau_target=None,
            )
        if pattern == "ignition":
            prop = CONFIRM_LEVEL if theta0 < 0.9 else 0.5 * (1.0 + theta0)
            return cls(
                theta0=theta0,
                prop_level=prop,
                confirm_level=prop,
                ext_level=0.9 * theta0,
                band_width=band_width,
                plateau_span=span,
                window=window if window is not None else 1.0,
                plateau_target=theta0,
            )
        return cls(
            theta0=0.0,
            prop_level=CONFIRM_LEVEL,
            confirm_level=CONFIRM_LEVEL,
            ext_level=0.01,
            band_width=band_width,
            plateau_span=span,
            window=window if window is not None else 1.0,
            plateau_target=None,
        )

    def probes(self, reference=None) -> ProbeSet:
        """Probe set matching these criteria; ``reference`` defaults to the θ₀ plateau."""
        if reference is None and self.plateau_target is not None:
            level = self.plateau_target

            def reference(x: np.ndarray) -> np.ndarray:
                return np.full_like(x, level)

        levels = (RADIUS_LEVEL,) if self.theta0 in (0.0, RADIUS_LEVEL) else (RADIUS_LEVEL, self.theta0)
        return ProbeSet(levels=levels, window=self.window, reference=reference)


def longest_run(times: np.ndarray, inside: np.ndarray) -> Tuple[float, int, int]:
    """Longest contiguous stretch of probes where ``inside`` holds: (span, first, last)."""
    best = (0.0, -1, -1)
    start = None
    for k, flag in enumerate(inside):
        if flag and start is None:
            start = k
        if start is not None and (not flag or k == inside.size - 1):
            stop = k if flag else k - 1
            span = float(times[stop] - times[start])
            if span > best[0] or best[1] < 0:
                best = (span, start, stop)
            start = None
    return best


@dataclass(frozen=True)
class TurnCount:
    down_up: int
    up_down: int
    phases: Tuple[int, ...] = ()

    def follows(self, pattern: Tuple[int, ...]) -> bool:
        """True when the monotone phases (+1 up, −1 down) occur in ``pattern`` order."""
        remaining = iter(pattern)
        return all(phase in remaining for phase in self.phases)


def count_turns(series, dead_band: float = 1e-8) -> TurnCount:
    """Count direction changes of a series, ignoring moves within ``dead_band``."""
    values = np.asarray(series, dtype=float)
    down_up = up_down = 0
    if values.size == 0:
        return TurnCount(0, 0)
    anchor = values[0]
    direction = 0
    phases = []
    for value in values[1:]:
        if abs(value - anchor) <= dead_band:
            continue
        moving = 1 if value > anchor else -1
        if direction == -1 and moving == 1:
            down_up += 1
        elif direction == 1 and moving == -1:
            up_down += 1
        if moving != direction:
            phases.append(moving)
        direction = moving
        anchor = value
    return TurnCount(down_up, up_down, tuple(phases))


def _radius_growing(trajectory: Trajectory) -> bool:
    radii = trajectory.radii.get(RADIUS_LEVEL)
    if radii is None:
        return True
    quarter = int(0.75 * (radii.size - 1))
    return bool(radii[-1] > radii[quarter])


def _first_time(times: np.ndarray, flags: np.ndarray) -> float:
    return float(times[int(np.argmax(flags))])


def midpoint_trend(trajectory: Trajectory) -> int:
    """+1 when the midpoint rose over the last quarter of the run, −1 otherwise."""
    mid = trajectory.midpoint
    quarter = int(0.75 * (mid.size - 1))
    return 1 if mid[-1] > mid[quarter] else -1


def classify_outcome(trajectory: Trajectory, spec: Nonlinearity, criteria: Optional[OutcomeCriteria] = None) -> Outcome:
    """Apply the propagation, extinction and plateau rules in that order."""
    if len(trajectory) < MIN_SAMPLES:
        raise InsufficientDataError(f"trajectory has {len(trajectory)} probe samples, need {MIN_SAMPLES}")
    if criteria is None:
        criteria = OutcomeCriteria.for_spec(spec, trajectory.t_max)
    times, mid, sup = trajectory.times, trajectory.midpoint, trajectory.sup_norm

    reached = mid >= criteria.prop_level
    if reached.any() and mid[-1] >= criteria.confirm_level and _radius_growing(trajectory):
        return Propagation(t_prop=_first_time(times, reached))

    below = sup <= criteria.ext_level
    if criteria.absorbing_extinction:
        if below.any():
            return Extinction(t_ext=_first_time(times, below))
    elif below[-1]:
        quarter = int(0.75 * (sup.size - 1))
        if sup[-1] <= sup[quarter]:
            # first time after which the sup-norm stays below the level
            above = np.flatnonzero(~below)
            first = 0 if above.size == 0 else int(above[-1]) + 1
            return Extinction(t_ext=float(times[first]))

    plateau = _plateau(trajectory, criteria)
    if plateau is not None:
        return plateau
    return Undetermined(horizon=float(trajectory.t_max))


def _plateau(trajectory: Trajectory, criteria: OutcomeCriteria) -> Optional[NearCritical]:
    if criteria.theta0 == 0.0:
        return None
    distance = trajectory.window_distance
    if distance is not None:
        inside = distance <= criteria.band_width
    elif criteria.plateau_target is not None:
        distance = np.abs(trajectory.midpoint - criteria.plateau_target)
        inside = distance <= criteria.band_width
    else:
        return None
    span, first, last = longest_run(trajectory.times, inside)
    if first < 0 or span < criteria.plateau_span:
        return None
    level = float(np.mean(trajectory.midpoint[first : last + 1]))
    return NearCritical(plateau_level=level, plateau_span=span, profile_distance=float(np.min(distance)))


def decision_stop(criteria: OutcomeCriteria):
    """Stop predicate for ``simulate``: true once the run's fate is settled."""

    def stop(recorder: ProbeRecorder) -> bool:
        if len(recorder) < MIN_SAMPLES or recorder.times[-1] < criteria.decision_time:
            return False
        mid = recorder.midpoint[-1]
        radii = recorder.radii.get(RADIUS_LEVEL)
        if mid >= criteria.confirm_level and (radii is None or radii[-1] > radii[-2]):
            return True
        return criteria.absorbing_extinction and recorder.sup_norm[-1] <= criteria.ext_level

    return stop
