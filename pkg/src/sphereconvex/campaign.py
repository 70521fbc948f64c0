"""Reproducible verification campaigns over the geometry modules.

A campaign runs a fixed sequence of checks (closed-form identities on grids,
geometric cross-validation, and seeded Monte Carlo over random convex
polygons) and assembles a machine-readable report.  Every check reports a
margin with the convention that larger is better and the check passes when
min_margin >= -tolerance: identity checks use the negated worst residual,
inequality checks use the worst raw slack.

Reports are deterministic for a given configuration: random trials draw from
PCG64 streams keyed by (seed, stream, trial index), so any worst case can be
regenerated from the payload alone.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import distance
from .errors import ConfigError
from .lune import construct_lune, equilateral_points, min_sampled_distance
from .polygon import (
    SphericalPolygon,
    DiameterWitness,
    boundary_diameter,
    extreme_diameter,
    random_polygon,
    regular_triangle,
)
from .quad import check_identities, construct_quad, phi, phi_inverse_delta, solve_quad

SCHEMA_VERSION = 1

# Sampling density for the lune clearance check and the side-length grid for
# the quadrilateral cross-validation.
LUNE_SAMPLES = 200
QUAD_GRID_STEPS = 20
QUAD_GRID_RANGE = (0.05, math.pi / 2 - 0.05)

# Stream tags for per-trial PCG64 substreams.
STREAM_WIDE = 0  # diameter in (pi/2, pi)
STREAM_SMALL = 1  # diameter at most pi/2


@dataclass(frozen=True)
class DeltaGrid:
    """Evenly spaced thickness grid inside (pi/2, pi)."""

    lo: float = math.pi / 2 + 1e-3
    hi: float = math.pi - 1e-3
    steps: int = 50

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)

    def to_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "steps": self.steps}


@dataclass(frozen=True)
class CampaignConfig:
    seed: int = 42
    trials: int = 10_000
    delta_grid: DeltaGrid = DeltaGrid()
    tolerance: float = 1e-9
    output_format: str = "text"

    def validate(self) -> None:
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            raise ConfigError(f"seed must be a 64-bit non-negative integer, got {self.seed}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if self.delta_grid.steps < 2:
            raise ConfigError(f"delta grid needs >= 2 steps, got {self.delta_grid.steps}")
        if not (math.pi / 2 < self.delta_grid.lo < self.delta_grid.hi < math.pi):
            raise ConfigError("delta grid must satisfy pi/2 < lo < hi < pi")
        if not self.tolerance > 0:
            raise ConfigError(f"tolerance must be positive, got {self.tolerance}")
        if self.output_format not in ("text", "json", "csv"):
            raise ConfigError(f"unknown output format {self.output_format!r}")

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "delta_grid": self.delta_grid.to_dict(),
            "tolerance": self.tolerance,
            "output_format": self.output_format,
        }


@dataclass(frozen=True)
class CheckResult:
    name: str
    instances: int
    min_margin: float
    worst_case_payload: dict
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "instances": self.instances,
            "min_margin": self.min_margin,
            "worst_case_payload": self.worst_case_payload,
            "pass": self.passed,
        }


@dataclass(frozen=True)
class CampaignReport:
    config: CampaignConfig
    checks: tuple[CheckResult, ...]
    overall_pass: bool
    wall_time_s: float

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "config": self.config.to_dict(),
            "checks": [c.to_dict() for c in self.checks],
            "overall_pass": self.overall_pass,
            "wall_time_s": self.wall_time_s,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def csv_rows(self) -> list[dict]:
        return [
            {
                "name": c.name,
                "instances": c.instances,
                "min_margin": repr(c.min_margin),
                "pass": str(c.passed).lower(),
                "worst_case_payload": json.dumps(c.worst_case_payload, sort_keys=True),
            }
            for c in self.checks
        ]

    def to_text(self) -> str:
        lines = [
            f"schema_version: {SCHEMA_VERSION}",
            "config: " + json.dumps(self.config.to_dict()),
        ]
        for c in self.checks:
            flag = "PASS" if c.passed else "FAIL"
            lines.append(
                f"[{flag}] {c.name:<38} instances={c.instances:<7} min_margin={c.min_margin:+.6e}"
            )
        lines.append(
            f"overall: {'PASS' if self.overall_pass else 'FAIL'} (wall time {self.wall_time_s:.2f} s)"
        )
        return "\n".join(lines)


@dataclass(frozen=True)
class TrialResult:
    """One Monte Carlo polygon with its diameters and bound margins."""

    polygon: SphericalPolygon
    witness: DiameterWitness
    extreme_diam: float
    margin: float
    ratio: float


def wide_trial(seed: int, index: int) -> TrialResult:
    """Regenerate trial `index` of the wide-diameter Monte Carlo stream."""
    P, w = random_polygon(seed, index, stream=STREAM_WIDE)
    ed = extreme_diameter(P)
    return TrialResult(
        polygon=P,
        witness=w,
        extreme_diam=ed,
        margin=ed - 2.0 * phi(w.value),
        ratio=ed / w.value,
    )


def small_trial(seed: int, index: int) -> tuple[SphericalPolygon, float, float]:
    """Regenerate trial `index` of the small-diameter stream.

    Returns (polygon, boundary diameter, extreme diameter); for diameters at
    most pi/2 the two diameters agree.
    """
    P, w = random_polygon(
        seed,
        index,
        stream=STREAM_SMALL,
        cap_radius_range=(0.05, math.pi / 4 - 0.01),
        diameter_range=(1e-6, math.pi / 2),
    )
    return P, w.value, extreme_diameter(P)


def _result(name: str, instances: int, min_margin: float, payload: dict, tolerance: float) -> CheckResult:
    return CheckResult(
        name=name,
        instances=instances,
        min_margin=min_margin,
        worst_case_payload=payload,
        passed=bool(min_margin >= -tolerance),
    )


def _check_phi_monotonic(grid: np.ndarray, tol: float) -> CheckResult:
    vals = np.array([phi(d) for d in grid])
    diffs = np.diff(vals)
    k = int(np.argmin(diffs))
    return _result(
        "phi_monotonic", len(grid) - 1, float(diffs[k]),
        {"delta_lo": float(grid[k]), "delta_hi": float(grid[k + 1])}, tol,
    )


def _check_phi_range(grid: np.ndarray, tol: float) -> CheckResult:
    vals = np.array([phi(d) for d in grid])
    margins = np.minimum(vals - math.pi / 4, math.pi / 3 - vals)
    k = int(np.argmin(margins))
    return _result("phi_range", len(grid), float(margins[k]), {"delta": float(grid[k])}, tol)


def _check_phi_roundtrip(grid: np.ndarray, tol: float) -> CheckResult:
    errs = np.array([abs(phi_inverse_delta(phi(d)) - d) for d in grid])
    k = int(np.argmax(errs))
    return _result("phi_inverse_roundtrip", len(grid), -float(errs[k]), {"delta": float(grid[k])}, tol)


def _check_thickness_gap(grid: np.ndarray, tol: float) -> CheckResult:
    gaps = np.array([d - 2.0 * phi(d) for d in grid])
    k = int(np.argmin(gaps))
    return _result("thickness_gap", len(grid), float(gaps[k]), {"delta": float(grid[k])}, tol)


def _check_quad(tol: float) -> CheckResult:
    sides = np.linspace(*QUAD_GRID_RANGE, QUAD_GRID_STEPS)
    worst = -1.0
    payload: dict = {}
    for kappa in sides:
        for lam in sides:
            sol = solve_quad(float(kappa), float(lam))
            meas = construct_quad(float(kappa), float(lam)).measured()
            err = max(
                abs(sol.mu - meas.mu),
                abs(sol.nu - meas.nu),
                abs(sol.xi - meas.xi),
                *check_identities(meas),
            )
            if err > worst:
                worst = err
                payload = {"kappa": float(kappa), "lambda": float(lam)}
    return _result("quad_closed_form_vs_embedding", QUAD_GRID_STEPS**2, -worst, payload, tol)


def _check_lune_equilateral(grid: np.ndarray, tol: float) -> CheckResult:
    worst = -1.0
    payload: dict = {}
    for d in grid:
        lune = construct_lune(float(d))
        i, j = equilateral_points(lune)
        apex = lune.side_b.center
        target = 2.0 * phi(float(d))
        err = max(
            abs(distance(i, apex) - target),
            abs(distance(j, apex) - target),
            abs(distance(i, j) - target),
        )
        if err > worst:
            worst = err
            payload = {"delta": float(d)}
    return _result("lune_equilateral_triangle", len(grid), -worst, payload, tol)


def _check_lune_clearance(grid: np.ndarray, tol: float) -> CheckResult:
    worst = math.inf
    payload: dict = {}
    for d in grid:
        lune = construct_lune(float(d))
        margin = min_sampled_distance(lune, LUNE_SAMPLES, LUNE_SAMPLES) - 2.0 * phi(float(d))
        if margin < worst:
            worst = margin
            payload = {"delta": float(d), "samples": LUNE_SAMPLES}
    return _result("lune_orthogonal_drop_clearance", len(grid), worst, payload, tol)


def _run_monte_carlo(seed: int, trials: int, tol: float) -> tuple[CheckResult, float, dict]:
    """Wide-diameter Monte Carlo; also returns the worst diameter ratio."""
    worst_margin = math.inf
    worst_payload: dict = {}
    worst_ratio = math.inf
    worst_ratio_payload: dict = {}
    for index in range(trials):
        t = wide_trial(seed, index)
        if t.margin < worst_margin:
            worst_margin = t.margin
            worst_payload = {
                "seed": seed,
                "stream": STREAM_WIDE,
                "trial": index,
                "diameter": t.witness.value,
                "extreme_diameter": t.extreme_diam,
                "margin": t.margin,
                "vertices": len(t.polygon.vertices),
            }
        if t.ratio < worst_ratio:
            worst_ratio = t.ratio
            worst_ratio_payload = {
                "seed": seed,
                "stream": STREAM_WIDE,
                "trial": index,
                "ratio": t.ratio,
            }
    check = _result("extreme_diameter_lower_bound_mc", trials, worst_margin, worst_payload, tol)
    return check, worst_ratio, worst_ratio_payload


def _check_ratio(grid: np.ndarray, mc_ratio: float, mc_payload: dict, trials: int, tol: float) -> CheckResult:
    worst = mc_ratio - 2.0 / 3.0
    payload = dict(mc_payload)
    for row in tightness_table(grid):
        margin = row["ratio"] - 2.0 / 3.0
        if margin < worst:
            worst = margin
            payload = {"delta": row["delta"], "ratio": row["ratio"], "family": "regular-triangle"}
    return _result("extreme_to_full_diameter_ratio", trials + len(grid), worst, payload, tol)


def _check_small_diameter(seed: int, trials: int, tol: float) -> CheckResult:
    worst = -1.0
    payload: dict = {}
    for index in range(trials):
        _, bd, ed = small_trial(seed, index)
        err = abs(bd - ed)
        if err > worst:
            worst = err
            payload = {"seed": seed, "stream": STREAM_SMALL, "trial": index, "diameter": bd}
    return _result("small_diameter_extreme_equality", trials, -worst, payload, tol)


def run_verify(config: CampaignConfig) -> CampaignReport:
    """Run the full verification campaign described by the configuration.

    The checks run in a fixed order; the report is a pure function of the
    configuration (apart from the wall-time field).
    """
    config.validate()
    t0 = time.perf_counter()
    grid = config.delta_grid.values()
    tol = config.tolerance

    checks = [
        _check_phi_monotonic(grid, tol),
        _check_phi_range(grid, tol),
        _check_phi_roundtrip(grid, tol),
        _check_thickness_gap(grid, tol),
        _check_quad(tol),
        _check_lune_equilateral(grid, tol),
        _check_lune_clearance(grid, tol),
    ]
    mc_check, worst_ratio, ratio_payload = _run_monte_carlo(config.seed, config.trials, tol)
    checks.append(mc_check)
    checks.append(_check_ratio(grid, worst_ratio, ratio_payload, config.trials, tol))
    # The small-diameter regime needs fewer trials for the same confidence;
    # scale with the configured budget but cap at 1000.
    small_trials = min(1000, 10 * config.trials)
    checks.append(_check_small_diameter(config.seed, small_trials, tol))

    overall = all(c.passed for c in checks)
    return CampaignReport(
        config=config,
        checks=tuple(checks),
        overall_pass=overall,
        wall_time_s=time.perf_counter() - t0,
    )


def phi_curve(steps: int) -> list[dict]:
    """Rows (delta, phi, 2*phi, gap) on an interior grid of (pi/2, pi)."""
    if steps < 2:
        raise ConfigError(f"steps must be >= 2, got {steps}")
    grid = np.linspace(math.pi / 2, math.pi, steps + 2)[1:-1]
    rows = []
    for d in grid:
        p = phi(float(d))
        rows.append({"delta": float(d), "phi": p, "two_phi": 2.0 * p, "gap": float(d) - 2.0 * p})
    return rows


def tightness_table(deltas: Iterable[float]) -> list[dict]:
    """Diameter data for the family of regular triangles with side 2*phi(delta).

    Each triangle has boundary diameter delta (attained from a vertex to the
    opposite edge) while its extreme points span only 2*phi(delta), so the
    bound margin is ~0 and the ratio tends to 2/3 as delta approaches pi.
    """
    rows = []
    for d in deltas:
        d = float(d)
        side = 2.0 * phi(d)
        tri = regular_triangle(side)
        w = boundary_diameter(tri)
        ed = extreme_diameter(tri)
        rows.append(
            {
                "delta": d,
                "diam": w.value,
                "diam_extreme": ed,
                "margin": ed - 2.0 * phi(w.value),
                "ratio": ed / w.value,
            }
        )
    return rows


def tightness_grid(steps: int) -> list[dict]:
    """`tightness_table` over an interior grid of (pi/2, pi)."""
    if steps < 2:
        raise ConfigError(f"steps must be >= 2, got {steps}")
    return tightness_table(np.linspace(math.pi / 2, math.pi, steps + 2)[1:-1])
