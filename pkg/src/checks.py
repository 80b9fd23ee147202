"""Invariant suite run by the ``check`` command."""

from dataclasses import dataclass, replace
from typing import Callable, List
import logging
import math

import numpy as np

from .errors import SharpFrontError
from .front import front_speed
from .nonlinearity import Nonlinearity
from .solver import Boundary, Grid, SimParams, Stepper, indicator_ic
from .stationary import bell_shape_check, energy_defect, residual, solve_bump
from .threshold import count_turns

logger = logging.getLogger(__name__)

N_PAIRS = 5
N_SAMPLES = 10_000
ANTIDERIVATIVE_STEP = 1e-5
KINK_MARGIN = 1e-4
MIDPOINT_PHASES = (-1, 1)
MIDPOINT_PHASES_BELOW_ONE = (1, -1, 1)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _kinks(spec: Nonlinearity) -> np.ndarray:
    return np.asarray([spec.theta0, *getattr(spec, "thetas", ())], dtype=float)


def check_endpoints(spec: Nonlinearity) -> CheckResult:
    values = (spec.eval_f(0.0), spec.eval_f(1.0))
    return CheckResult("endpoints", values == (0.0, 0.0), f"f(0)={values[0]:g}, f(1)={values[1]:g}")


def check_lipschitz(spec: Nonlinearity, seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    a, b = rng.uniform(0.0, 1.0, N_SAMPLES), rng.uniform(0.0, 1.0, N_SAMPLES)
    c = spec.lipschitz_constant()
    excess = np.abs(spec.eval_f(a) - spec.eval_f(b)) - c * np.abs(a - b)
    worst = float(excess.max())
    return CheckResult("lipschitz", worst <= 1e-15, f"c={c:.6g}, worst excess {worst:.3g}")


def check_antiderivative(spec: Nonlinearity) -> CheckResult:
    h = ANTIDERIVATIVE_STEP
    theta = np.linspace(0.0123, 0.9877, 200)
    theta = theta[np.min(np.abs(theta[:, None] - _kinks(spec)[None, :]), axis=1) > KINK_MARGIN]
    slope = (spec.potential(theta + h) - spec.potential(theta - h)) / (2.0 * h)
    worst = float(np.max(np.abs(slope - spec.eval_f(theta))))
    return CheckResult("antiderivative", worst <= 1e-8, f"max |F' - f| = {worst:.3g}")


def check_theta2(spec: Nonlinearity) -> CheckResult:
    theta2 = spec.theta2()
    value = abs(spec.potential(theta2))
    ok = value <= 1e-10 and spec.theta0 < theta2 < 1.0
    return CheckResult("theta2", ok, f"theta2={theta2:.10f}, |F(theta2)|={value:.3g}")


def check_comparison(spec: Nonlinearity, grid: Grid, params: SimParams, seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    advance = Stepper(spec, grid, params)
    worst_order, worst_range = 0.0, 0.0
    for _ in range(N_PAIRS):
        u = rng.uniform(0.0, 1.0, grid.n_nodes) * (rng.uniform(0.0, 1.0, grid.n_nodes) < 0.5)
        v = np.minimum(1.0, u + rng.uniform(0.0, 0.2, grid.n_nodes))
        for _ in range(params.n_steps):
            u, v = advance(u), advance(v)
            worst_order = max(worst_order, float(np.max(u - v)))
            worst_range = max(worst_range, float(-min(u.min(), v.min())), float(max(u.max(), v.max()) - 1.0))
    ok = worst_order <= 1e-12 and worst_range <= 1e-12
    return CheckResult("comparison", ok, f"max(u - v)={worst_order:.3g}, range excess {worst_range:.3g}")


def check_indicator_structure(
    spec: Nonlinearity, grid: Grid, params: SimParams, L: float, alpha: float = 1.0
) -> List[CheckResult]:
    """Symmetry, radial monotonicity and the midpoint phases for α·χ_{[−L, L]}.

    With α = 1 the midpoint falls and then possibly rises. Below 1 it may
    first rise towards the reaction balance, so up, down, up is accepted.
    """
    advance = Stepper(spec, grid, params)
    values = indicator_ic(grid, L, alpha).values
    centre = grid.center
    asymmetry, radial = 0.0, 0.0
    midpoint = [values[centre]]
    for _ in range(params.n_steps):
        values = advance(values)
        asymmetry = max(asymmetry, float(np.max(np.abs(values - values[::-1]))))
        radial = max(radial, float(np.max(np.diff(values[centre:]))))
        midpoint.append(values[centre])
    turns = count_turns(midpoint, dead_band=1e-8)
    allowed = MIDPOINT_PHASES if alpha >= 1.0 else MIDPOINT_PHASES_BELOW_ONE
    return [
        CheckResult("symmetry", asymmetry <= 1e-12, f"max |T(x) - T(-x)| = {asymmetry:.3g}"),
        CheckResult("radial_monotone", radial <= 1e-10, f"max increase in |x| = {radial:.3g}"),
        CheckResult(
            "midpoint_turns",
            turns.follows(allowed),
            f"{turns.down_up} decrease->increase, {turns.up_down} increase->decrease, alpha={alpha:g}",
        ),
    ]


def check_mass(spec: Nonlinearity, grid: Grid, params: SimParams) -> CheckResult:
    heat = spec.with_amplitude(0.0)
    neumann = replace(params, boundary=Boundary.NEUMANN)
    advance = Stepper(heat, grid, neumann)
    values = np.exp(-(grid.x**2))
    start = float(values.sum())
    for _ in range(neumann.n_steps):
        values = advance(values)
    drift = abs(float(values.sum()) - start)
    return CheckResult("mass_conservation", drift <= 1e-12 * start, f"|sum drift| = {drift:.3g}")


def check_bump(spec: Nonlinearity) -> List[CheckResult]:
    profile = solve_bump(spec)
    res, energy = residual(profile, spec), energy_defect(profile, spec)
    shape = bell_shape_check(profile, spec)
    return [
        CheckResult("bump_residual", res <= 1e-6, f"sup |U'' + f(U)| = {res:.3g}"),
        CheckResult("bump_energy", energy <= 1e-8, f"energy identity defect {energy:.3g}"),
        CheckResult("bump_shape", shape.ok, "; ".join(shape.problems) or f"inflection at x={shape.inflection_x:.4f}"),
    ]


def check_front_sign(spec: Nonlinearity) -> CheckResult:
    solution = front_speed(spec)
    integral = float(spec.potential(1.0))
    if abs(integral) <= 1e-12:
        ok = abs(solution.speed) <= 1e-3
    else:
        ok = math.copysign(1.0, solution.speed) == math.copysign(1.0, integral) and solution.speed != 0.0
    return CheckResult("front_sign", ok, f"v={solution.speed:.6f}, integral of f = {integral:.6g}")


def run_checks(
    spec: Nonlinearity, grid: Grid, params: SimParams, L: float = 1.0, alpha: float = 1.0
) -> List[CheckResult]:
    """Every check applicable to ``spec``; errors inside a check count as failures."""
    results: List[CheckResult] = []

    def attempt(name: str, check: Callable[[], object]) -> None:
        try:
            outcome = check()
        except SharpFrontError as exc:
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
            return
        results.extend(outcome if isinstance(outcome, list) else [outcome])

    attempt("endpoints", lambda: check_endpoints(spec))
    attempt("lipschitz", lambda: check_lipschitz(spec))
    attempt("antiderivative", lambda: check_antiderivative(spec))
    attempt("comparison", lambda: check_comparison(spec, grid, params))
    attempt("indicator", lambda: check_indicator_structure(spec, grid, params, L, alpha))
    attempt("mass_conservation", lambda: check_mass(spec, grid, params))

    pattern = spec.check_sign_pattern().pattern
    if pattern == "bistable":
        if spec.potential(1.0) > 0.0:
            attempt("theta2", lambda: check_theta2(spec))
            attempt("bump", lambda: check_bump(spec))
        attempt("front_sign", lambda: check_front_sign(spec))

    for result in results:
        log = logger.info if result.passed else logger.warning
        log(f"check {result.name}: {'ok' if result.passed else 'FAILED'} ({result.detail})")
    return results
