"""Parameter sweeps over the charging requirement and the task utility requirement.

Every grid point is solved with the greedy solver and, when satisfiable,
simulated. Sweeps never stop at the first unsatisfiable point; the whole grid
is recorded so non-monotone feasibility shows up in the output.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from tenp.model import ProblemInstance, Variant, Verdict
from tenp.radio import charge_bounds
from tenp.sim import SimMetrics, simulate
from tenp.solver import distance_minimization

DEFAULT_LAMBDA_POINTS = 18
# 0.10, 0.11, ..., 0.25
DEFAULT_U_GRID = tuple(round(0.10 + 0.01 * i, 2) for i in range(16))


class Axis(str, enum.Enum):
    LAMBDA = "lambda"
    UTILITY = "utility"


@dataclass(frozen=True)
class SweepPoint:
    param_value: float
    verdict: Verdict
    metrics: Optional[SimMetrics]
    placed_count: int


@dataclass
class SweepSeries:
    variant: Variant
    swept: Axis
    points: List[SweepPoint]
    stalls: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def sat_points(self) -> List[SweepPoint]:
        return [p for p in self.points if p.verdict is Verdict.SATISFIABLE]

    def stall_id(self, index: int) -> Optional[int]:
        for k, (lo, hi) in enumerate(self.stalls):
            if lo <= index <= hi:
                return k
        return None


def linspace(lo: float, hi: float, k: int) -> List[float]:
    if k < 1:
        raise ValueError("need at least one grid point")
    if k == 1:
        return [lo]
    step = (hi - lo) / (k - 1)
    grid = [lo + i * step for i in range(k - 1)] + [hi]
    return grid


def lambda_grid(instance: ProblemInstance, points: int = DEFAULT_LAMBDA_POINTS) -> List[float]:
    """Evenly spaced charging requirements from the least to the most charged free cell.

    Collapses to a single point when every free cell receives the same charge.
    """
    lo, hi = charge_bounds(instance.environment, instance.ets, instance.radio)
    if lo == hi:
        return [lo]
    return linspace(lo, hi, points)


def _check_grid(grid: Sequence[float]) -> List[float]:
    grid = [float(v) for v in grid]
    if not grid:
        raise ValueError("sweep grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("sweep grid must be strictly ascending")
    return grid


def _point(instance: ProblemInstance, value: float, simulation_time: float) -> SweepPoint:
    placement = distance_minimization(instance)
    metrics = None
    if placement.verdict is Verdict.SATISFIABLE:
        metrics = simulate(placement, instance, simulation_time)
    return SweepPoint(value, placement.verdict, metrics, len(placement.assignments))


def sweep_lambda(
    instance: ProblemInstance, grid: Sequence[float], simulation_time: float
) -> SweepSeries:
    if instance.variant is Variant.TSP:
        raise ValueError("a lambda sweep is meaningless for TSP, which ignores charging")
    grid = _check_grid(grid)
    points = [_point(instance.with_lambda(lam), lam, simulation_time) for lam in grid]
    return SweepSeries(instance.variant, Axis.LAMBDA, points, detect_stalls(points))


def sweep_utility(
    instance: ProblemInstance, grid: Sequence[float], simulation_time: float
) -> SweepSeries:
    if instance.variant is Variant.ESP:
        raise ValueError("a utility sweep is meaningless for ESP, which ignores utility")
    grid = _check_grid(grid)
    if any(not 0 < u <= 1 for u in grid):
        raise ValueError("utility requirements must lie in (0, 1]")
    points = [_point(instance.with_uniform_utility(u), u, simulation_time) for u in grid]
    return SweepSeries(instance.variant, Axis.UTILITY, points, detect_stalls(points))


def detect_stalls(points: Sequence[SweepPoint]) -> List[Tuple[int, int]]:
    """Maximal runs (length >= 2) of consecutive satisfiable points with equal metrics.

    Returned as inclusive ``(first, last)`` index pairs. Metrics are compared
    exactly.
    """
    stalls = []
    start = None
    prev = None
    for i, p in enumerate(points):
        key = None
        if p.metrics is not None:
            key = (p.metrics.avg_harvested_charge, p.metrics.avg_task_utility)
        if key is not None and key == prev:
            if start is None:
                start = i - 1
        else:
            if start is not None:
                stalls.append((start, i - 1))
            start = None
        prev = key
    if start is not None:
        stalls.append((start, len(points) - 1))
    return stalls


@dataclass(frozen=True)
class VariantMaxima:
    variant: Variant
    max_avg_utility: Optional[float]
    max_avg_charge: Optional[float]


def variant_summary(
    instance: ProblemInstance,
    lam_grid: Sequence[float],
    u_grid: Sequence[float],
    simulation_time: float,
) -> Dict[Variant, VariantMaxima]:
    """Best average utility and charge reached by each variant over its sweeps.

    TENP runs both sweeps, ESP only the lambda sweep and TSP only the utility
    sweep. Fixed parameters (u for lambda sweeps, lambda for utility sweeps)
    come from ``instance``.
    """
    plan = {
        Variant.TENP: (Axis.LAMBDA, Axis.UTILITY),
        Variant.ESP: (Axis.LAMBDA,),
        Variant.TSP: (Axis.UTILITY,),
    }
    out = {}
    for variant, axes in plan.items():
        inst = instance.with_variant(variant)
        sat: List[SimMetrics] = []
        for axis in axes:
            if axis is Axis.LAMBDA:
                series = sweep_lambda(inst, lam_grid, simulation_time)
            else:
                series = sweep_utility(inst, u_grid, simulation_time)
            sat.extend(p.metrics for p in series.sat_points)
        if sat:
            out[variant] = VariantMaxima(
                variant,
                max(m.avg_task_utility for m in sat),
                max(m.avg_harvested_charge for m in sat),
            )
        else:
            out[variant] = VariantMaxima(variant, None, None)
    return out
