"""Feasibility predicates: per-task utility and per-sensor charging requirement.

Both comparisons are inclusive, so a cell whose utility (charge) equals the
requirement exactly is feasible.
"""

from __future__ import annotations

from typing import Sequence

from tenp.model import Cell, EnergyTransmitter, GridEnvironment, Task, Variant, manhattan_distance
from tenp.radio import RadioParams, total_received_charge


def sensor_utility(cell: Cell, task: Task) -> float:
    """Utility ``1 / d`` of a sensor at Manhattan distance ``d`` from its task."""
    d = manhattan_distance(cell, task.cell)
    if d == 0:
        raise ValueError(f"sensor cell {cell.as_tuple()} coincides with task {task.id}")
    return 1.0 / d


def check_utility_constraint(cell: Cell, task: Task) -> bool:
    return task.utility_requirement <= sensor_utility(cell, task)


def check_charging_constraint(
    cell: Cell,
    ets: Sequence[EnergyTransmitter],
    env: GridEnvironment,
    params: RadioParams,
    lam: float,
) -> bool:
    return lam <= total_received_charge(cell, ets, env, params)


def check_both(
    cell: Cell,
    task: Task,
    ets: Sequence[EnergyTransmitter],
    env: GridEnvironment,
    params: RadioParams,
    lam: float,
    variant: Variant,
) -> bool:
    """Combined check, with each family gated by ``variant``."""
    variant = Variant(variant)
    if variant.uses_utility and not check_utility_constraint(cell, task):
        return False
    if variant.uses_charging and not check_charging_constraint(cell, ets, env, params, lam):
        return False
    return True


def check_cell(instance, cell: Cell, task: Task) -> bool:
    """:func:`check_both` with everything but the cell and task taken from ``instance``."""
    return check_both(
        cell, task, instance.ets, instance.environment, instance.radio, instance.lam, instance.variant
    )
