"""Laboratory: the per-command workflows behind the CLI."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict
from itertools import repeat
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple
import logging
import math

import numpy as np

from .checks import CheckResult, run_checks
from .config import RunConfig, validate
from .errors import SharpFrontError
from .front import FrontSolution, front_speed
from .output import ArtifactWriter
from .solver import ProbeSet, indicator_ic, run_indicator
from .stationary import StationaryProfile, bell_shape_check, energy_defect, residual, solve_bump
from .threshold import (
    OutcomeCriteria,
    ThresholdResult,
    check_domination,
    classify_outcome,
    continuity_bound_check,
    domination_margin,
    find_threshold,
    lockstep_params,
    ratio_witness,
)

logger = logging.getLogger(__name__)

CHECK_T_MAX = 5.0

SWEEP_COLUMNS = {
    "front": ("value", "speed", "integral", "shoot_residual"),
    "bump": ("value", "theta2", "residual", "energy_defect"),
    "threshold": ("value", "L_lo", "L_hi", "L0_estimate", "iterations"),
}


class Laboratory:
    """Runs one validated configuration and writes its artifacts."""

    def __init__(self, run: RunConfig, output_dir: Optional[Path] = None):
        self.run = run
        self.output_dir = Path(output_dir) if output_dir is not None else Path("output")
        self.spec = run.nonlinearity.build()
        self.grid = run.grid.build()
        logger.info(f"laboratory for {self.spec.kind} on X={self.grid.half_width:g}, h={self.grid.h:g}")

    def _writer(self, command: str) -> ArtifactWriter:
        return ArtifactWriter(self.output_dir, command)

    def _summary(self, **values: Any) -> Dict[str, Any]:
        return {"config": self.run.to_dict(), **values}

    # simulate

    def simulate(self) -> Dict[str, Any]:
        """Indicator run from sim.alpha·χ_{[−L, L]} with snapshots and probe series."""
        sim = self.run.sim
        params = sim.build(self.grid, self.spec)
        trajectory = run_indicator(self.spec, self.grid, params, sim.L, alpha=sim.alpha, probes=ProbeSet())

        outcome = None
        try:
            outcome = classify_outcome(trajectory, self.spec, OutcomeCriteria.for_spec(self.spec, params.t_max)).to_dict()
        except SharpFrontError as e:
            logger.info(f"trajectory not classified: {e}")

        writer = self._writer("simulate")
        for snapshot in trajectory.snapshots:
            writer.snapshot(snapshot)
        names, rows = trajectory.probe_table()
        writer.csv("probes.csv", names, rows)
        final = trajectory.final
        summary = self._summary(
            L=sim.L,
            alpha=sim.alpha,
            dt=params.dt,
            n_steps=params.n_steps,
            half_width=final.grid.half_width,
            t_final=final.time,
            sup_norm=final.sup_norm,
            midpoint=final.midpoint,
            mass=final.mass,
            outcome=outcome,
        )
        writer.json("summary.json", summary)
        return summary

    # threshold

    def threshold_result(self) -> ThresholdResult:
        cfg = self.run.require("threshold")
        params = self.run.sim.build(self.grid, self.spec, t_max=cfg.t_max)
        criteria = OutcomeCriteria.for_spec(self.spec, cfg.t_max, cfg.band_width, cfg.window, cfg.plateau_span)
        reference = None
        if self.spec.check_sign_pattern().pattern == "bistable":
            # the bump is the critical profile; its distance is the near-critical probe
            reference = solve_bump(self.spec).evaluate
        return find_threshold(
            self.spec,
            self.grid,
            params,
            (cfg.L_min, cfg.L_max),
            gap_tol=cfg.gap_tol,
            alpha=cfg.alpha,
            max_iter=cfg.max_iter,
            criteria=criteria,
            reference=reference,
            keep_trajectories=True,
        )

    def threshold(self) -> Dict[str, Any]:
        """Bisect for L₀ and write the trace plus one probe file per classified run."""
        result = self.threshold_result()
        writer = self._writer("threshold")
        for index, entry in enumerate(result.trace):
            if entry.trajectory is not None:
                names, rows = entry.trajectory.probe_table()
                writer.csv(f"probes_{index:02d}.csv", names, rows)
        writer.csv(
            "trace.csv",
            ("L", "rank", "side", "flagged", "horizon"),
            [[e.L, e.outcome.rank, e.side, float(e.flagged), e.horizon] for e in result.trace],
        )
        summary = self._summary(**result.to_dict())
        writer.json("threshold.json", summary)
        return summary

    # bump

    def bump_profile(self) -> StationaryProfile:
        cfg = self.run.require("bump")
        return solve_bump(self.spec, tol=cfg.tol, u_min=cfg.u_min)

    def bump(self) -> Dict[str, Any]:
        cfg = self.run.require("bump")
        profile = self.bump_profile()
        shape = bell_shape_check(profile, self.spec, cfg.residual_step)
        writer = self._writer("bump")
        writer.csv("bump.csv", ("x", "U", "Uprime"), profile.table())
        summary = self._summary(
            theta2=profile.theta2,
            x_end=profile.x_end,
            decay_rate=profile.decay_rate,
            residual=residual(profile, self.spec, cfg.residual_step),
            energy_defect=energy_defect(profile, self.spec),
            bell_shape={**asdict(shape), "ok": shape.ok},
        )
        writer.json("bump.json", summary)
        return summary

    # front

    def front_solution(self) -> FrontSolution:
        cfg = self.run.require("front")
        return front_speed(self.spec, tol=cfg.tol, step=cfg.step)

    def front(self) -> Dict[str, Any]:
        solution = self.front_solution()
        writer = self._writer("front")
        writer.csv("front.csv", ("xi", "phi"), solution.table())
        summary = self._summary(
            speed=solution.speed,
            integral=float(self.spec.potential(1.0)),
            shoot_residual=solution.shoot_residual,
            bracket=list(solution.bracket),
            iterations=solution.iterations,
        )
        writer.json("front.json", summary)
        return summary

    # lemma22

    def compare(self) -> Dict[str, Any]:
        """Domination test, ratio witness and, with L1/L2 given, the continuity bound."""
        cfg = self.run.require("lemma22")
        f_spec, g_spec = cfg.f.build(), cfg.g.build()
        margin = domination_margin(f_spec, g_spec, cfg.theta1, cfg.eps1, cfg.theta_max)
        dominated = check_domination(f_spec, g_spec, cfg.theta1, cfg.eps1, cfg.theta_max)
        logger.info(f"domination margin {margin:.3g} on [{cfg.theta1}, {cfg.theta_max}]")

        faster = g_spec if g_spec.lipschitz_constant() >= f_spec.lipschitz_constant() else f_spec
        params = self.run.sim.build(self.grid, faster)
        witness = ratio_witness(
            f_spec,
            g_spec,
            indicator_ic(self.grid, cfg.L, cfg.alpha_T),
            indicator_ic(self.grid, cfg.L, cfg.alpha_S),
            cfg.theta1,
            cfg.eps1,
            params,
            theta_max=cfg.theta_max,
        )

        writer = self._writer("lemma22")
        writer.csv(
            "omega.csv",
            ("t", "omega", "active"),
            np.column_stack([witness.times, witness.omega_series, witness.active.astype(float)]),
        )

        continuity = None
        if cfg.L1 is not None:
            base_params = self.run.sim.build(self.grid, self.spec, t_max=cfg.continuity_t_max)
            report = continuity_bound_check(
                self.spec, cfg.L1, cfg.L2, self.grid, lockstep_params(base_params, cfg.L2, self.spec)
            )
            continuity = {
                "L1": report.L1,
                "L2": report.L2,
                "lipschitz": report.lipschitz,
                "max_excess": report.max_excess,
                "min_difference": report.min_difference,
                "worst_t": report.worst_t,
                "worst_x": report.worst_x,
                "ok": report.ok,
            }

        summary = self._summary(
            domination={"margin": margin, "holds": dominated},
            ratio_witness={
                "t_start": witness.t_start,
                "start_value": witness.start_value,
                "terminal": witness.terminal,
                "worst_drop": witness.worst_drop(),
                "hypothesis_held": witness.hypothesis_held,
                "holds": witness.holds(),
            },
            continuity=continuity,
        )
        writer.json("lemma22.json", summary)
        return summary

    # sweep

    def sweep(self, jobs: Optional[int] = None) -> Dict[str, Any]:
        """One row per value of ``sweep.parameter``; rows keep the order of ``sweep.values``."""
        cfg = self.run.require("sweep")
        jobs = jobs or cfg.jobs
        cells = [self.run.with_value(f"nonlinearity.{cfg.parameter}", value).to_dict() for value in cfg.values]
        logger.info(f"sweep of {cfg.command} over {cfg.parameter}: {len(cells)} cells, {jobs} jobs")

        if jobs == 1:
            outcomes = [_sweep_cell(raw, cfg.command) for raw in cells]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as executor:
                outcomes = list(executor.map(_sweep_cell, cells, repeat(cfg.command)))

        rows = [[value, *row] for value, (row, _) in zip(cfg.values, outcomes)]
        errors = {str(value): error for value, (_, error) in zip(cfg.values, outcomes) if error}
        writer = self._writer("sweep")
        writer.csv("sweep.csv", SWEEP_COLUMNS[cfg.command], rows)
        summary = self._summary(columns=list(SWEEP_COLUMNS[cfg.command]), rows=rows, errors=errors)
        writer.json("sweep.json", summary)
        return summary

    # check

    def check(self) -> Tuple[bool, List[CheckResult]]:
        sim = self.run.sim
        params = sim.build(self.grid, self.spec, t_max=min(sim.t_max, CHECK_T_MAX))
        results = run_checks(self.spec, self.grid, params, L=sim.L, alpha=sim.alpha)
        passed = all(result.passed for result in results)
        self._writer("check").json(
            "check.json", self._summary(passed=passed, checks=[result.to_dict() for result in results])
        )
        return passed, results


def _sweep_cell(raw: Dict[str, Any], command: str) -> Tuple[List[float], Optional[str]]:
    """Metrics of one sweep cell; a failed cell gives NaNs and its error text."""
    width = len(SWEEP_COLUMNS[command]) - 1
    try:
        lab = Laboratory(validate(raw))
        if command == "front":
            solution = lab.front_solution()
            row = [solution.speed, float(lab.spec.potential(1.0)), solution.shoot_residual]
        elif command == "bump":
            profile = lab.bump_profile()
            row = [profile.theta2, residual(profile, lab.spec), energy_defect(profile, lab.spec)]
        else:
            result = lab.threshold_result()
            row = [result.L_lo, result.L_hi, result.L0_estimate, float(result.iterations)]
    except SharpFrontError as e:
        logger.warning(f"sweep cell failed: {type(e).__name__}: {e}")
        return [math.nan] * width, f"{type(e).__name__}: {e}"
    return row, None
