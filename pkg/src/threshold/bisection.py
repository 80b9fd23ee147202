"""Bisection on the half-width L of the initial indicator."""

from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, List, Optional, Tuple
import logging

import numpy as np

from .outcome import (
    Extinction,
    NearCritical,
    Outcome,
    OutcomeCriteria,
    Propagation,
    Undetermined,
    classify_outcome,
    decision_stop,
    midpoint_trend,
)
from ..errors import BracketError, ConvergenceError
from ..nonlinearity import Nonlinearity
from ..solver import Grid, ProbeSet, SimParams, Trajectory, run_indicator

logger = logging.getLogger(__name__)

MAX_ITER = 40


@dataclass
class TraceEntry:
    """One classified run. ``side`` is −1 (extinction side) or +1 (propagation side)."""

    L: float
    outcome: Outcome
    side: int
    flagged: bool = False
    horizon: float = 0.0
    trajectory: Optional[Trajectory] = field(default=None, repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "L": self.L,
            "side": self.side,
            "flagged": self.flagged,
            "horizon": self.horizon,
            **self.outcome.to_dict(),
        }


@dataclass
class ThresholdResult:
    """Bracket [L_lo, L_hi] around the critical half-width."""

    L_lo: float
    L_hi: float
    trace: List[TraceEntry]
    iterations: int
    alpha: float = 1.0
    hair_trigger: bool = False

    @property
    def L0_estimate(self) -> float:
        return 0.0 if self.hair_trigger else 0.5 * (self.L_lo + self.L_hi)

    @property
    def sharpness_gap(self) -> float:
        return self.L_hi - self.L_lo

    def to_dict(self) -> Dict[str, Any]:
        return {
            "L_lo": self.L_lo,
            "L_hi": self.L_hi,
            "L0_estimate": self.L0_estimate,
            "sharpness_gap": self.sharpness_gap,
            "iterations": self.iterations,
            "alpha": self.alpha,
            "hair_trigger": self.hair_trigger,
            "trace": [entry.to_dict() for entry in self.trace],
        }


def check_monotone_trace(trace: List[TraceEntry]) -> None:
    """Outcome ranks must be non-decreasing in L; the scheme is order-preserving."""
    ordered = sorted(trace, key=lambda entry: entry.L)
    for left, right in zip(ordered, ordered[1:]):
        if right.outcome.rank < left.outcome.rank:
            raise ConvergenceError(
                f"non-monotone outcomes: L={left.L:.6g} is {left.outcome.label} "
                f"but L={right.L:.6g} is {right.outcome.label}"
            )


class ThresholdSearch:
    """Runs and classifies indicator data for one (spec, grid, params, alpha)."""

    def __init__(
        self,
        spec: Nonlinearity,
        grid: Grid,
        params: SimParams,
        alpha: float = 1.0,
        criteria: Optional[OutcomeCriteria] = None,
        reference: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        keep_trajectories: bool = False,
    ):
        self.spec = spec
        self.grid = grid
        self.params = params
        self.alpha = alpha
        self.criteria = criteria or OutcomeCriteria.for_spec(spec, params.t_max)
        self.probes: ProbeSet = self.criteria.probes(reference)
        self.keep_trajectories = keep_trajectories

    def run(self, L: float, params: Optional[SimParams] = None) -> Trajectory:
        return run_indicator(
            self.spec,
            self.grid,
            params or self.params,
            L,
            alpha=self.alpha,
            probes=self.probes,
            stop=decision_stop(self.criteria),
        )

    def classify(self, L: float) -> TraceEntry:
        """Classify one L; undecided runs get one horizon doubling, then a side by trend."""
        params = self.params
        trajectory = self.run(L, params)
        outcome = classify_outcome(trajectory, self.spec, self.criteria)
        if isinstance(outcome, (Undetermined, NearCritical)):
            params = replace(params, t_max=2.0 * params.t_max)
            logger.warning(f"L={L:.6g} is {outcome.label} at t={self.params.t_max:g}; doubling the horizon")
            trajectory = self.run(L, params)
            outcome = classify_outcome(trajectory, self.spec, self.criteria)

        flagged = False
        if isinstance(outcome, Extinction):
            side = -1
        elif isinstance(outcome, Propagation):
            side = 1
        else:
            side = midpoint_trend(trajectory)
            flagged = True
            logger.warning(f"L={L:.6g} still {outcome.label}; assigned to side {side:+d} by midpoint trend")
        return TraceEntry(
            L=L,
            outcome=outcome,
            side=side,
            flagged=flagged,
            horizon=params.t_max,
            trajectory=trajectory if self.keep_trajectories else None,
        )


def find_threshold(
    spec: Nonlinearity,
    grid: Grid,
    params: SimParams,
    L_bracket: Tuple[float, float],
    gap_tol: float = 1e-3,
    alpha: float = 1.0,
    max_iter: int = MAX_ITER,
    criteria: Optional[OutcomeCriteria] = None,
    reference: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    keep_trajectories: bool = False,
) -> ThresholdResult:
    """Bisect on L until the extinction/propagation bracket is narrower than ``gap_tol``.

    When θ₀ = 0 and already ``L_min`` propagates, the hair-trigger case is
    reported with L₀ = 0.
    """
    L_min, L_max = L_bracket
    if not 0.0 <= L_min < L_max:
        raise BracketError(f"invalid bracket [{L_min}, {L_max}]")
    search = ThresholdSearch(spec, grid, params, alpha, criteria, reference, keep_trajectories)

    low = search.classify(L_min)
    trace = [low]
    if isinstance(low.outcome, Propagation) and spec.theta0 == 0.0:
        logger.info(f"L={L_min:g} already propagates with theta0=0: hair-trigger, L0=0")
        return ThresholdResult(L_lo=0.0, L_hi=L_min, trace=trace, iterations=0, alpha=alpha, hair_trigger=True)
    if not isinstance(low.outcome, Extinction):
        raise BracketError(f"L_min={L_min:g} is {low.outcome.label}, expected extinction")
    high = search.classify(L_max)
    trace.append(high)
    if not isinstance(high.outcome, Propagation):
        raise BracketError(f"L_max={L_max:g} is {high.outcome.label}, expected propagation")

    L_lo, L_hi = L_min, L_max
    iterations = 0
    while L_hi - L_lo > gap_tol:
        if iterations >= max_iter:
            raise ConvergenceError(f"bracket [{L_lo:.6g}, {L_hi:.6g}] not below {gap_tol:g} after {max_iter} iterations")
        iterations += 1
        L = 0.5 * (L_lo + L_hi)
        entry = search.classify(L)
        trace.append(entry)
        if entry.side < 0:
            L_lo = L
        else:
            L_hi = L
        logger.info(f"iterate {iterations}: L={L:.8f} {entry.outcome.label} -> [{L_lo:.8f}, {L_hi:.8f}]")

    check_monotone_trace(trace)
    return ThresholdResult(L_lo=L_lo, L_hi=L_hi, trace=trace, iterations=iterations, alpha=alpha)
