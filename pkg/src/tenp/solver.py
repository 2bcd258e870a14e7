"""Greedy distance-minimizing placement.

Sensors are processed task by task in partition order. Each sensor ranks the
currently free cells by combined distance (to its task plus to every ET),
breaking ties by row-major index, and takes the first cell that passes the
active constraints. A sensor with no feasible cell is skipped and the run
continues, so unsatisfiable instances still return a partial placement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence

from tenp.constraints import check_charging_constraint, check_utility_constraint
from tenp.model import (
    Cell,
    EnergyTransmitter,
    Placement,
    ProblemInstance,
    Task,
    Verdict,
    manhattan_distance,
)


@dataclass(frozen=True)
class RankedCell:
    cell: Cell
    combined_distance: int
    tie_rank: int


def et_distance(cell: Cell, ets: Sequence[EnergyTransmitter]) -> int:
    return sum(manhattan_distance(cell, e.cell) for e in ets)


def combined_distance(cell: Cell, task: Task, ets: Sequence[EnergyTransmitter]) -> int:
    return manhattan_distance(cell, task.cell) + et_distance(cell, ets)


def rank_free_cells(
    free: Iterable[Cell], task: Task, ets: Sequence[EnergyTransmitter], n: int | None = None
) -> List[RankedCell]:
    """Sort cells by ``(combined distance, row-major index)``.

    ``n`` is the grid side used for the row-major index; when omitted it is
    taken as the largest coordinate present, which orders cells identically.
    """
    free = list(free)
    if n is None:
        n = max((max(c.x, c.y) for c in free), default=1)
    ranked = [
        RankedCell(c, combined_distance(c, task, ets), (c.y - 1) * n + c.x) for c in free
    ]
    ranked.sort(key=lambda r: (r.combined_distance, r.tie_rank))
    return ranked


def distance_minimization(instance: ProblemInstance) -> Placement:
    env = instance.environment
    ets = instance.ets
    variant = instance.variant
    n = env.n

    # Per-cell quantities that do not depend on the sensor being placed.
    free_cells = env.free_cells
    rank = {c: (c.y - 1) * n + c.x for c in free_cells}
    et_sum = {c: et_distance(c, ets) for c in free_cells}
    if variant.uses_charging:
        charge_ok = {
            c: check_charging_constraint(c, ets, env, instance.radio, instance.lam)
            for c in free_cells
        }
    else:
        charge_ok = dict.fromkeys(free_cells, True)

    tasks = {t.id: t for t in instance.tasks}
    utility_ok: Dict[int, Dict[Cell, bool]] = {}
    occupied = set()
    position: Dict[int, Cell] = {}

    for task_id, sensor in instance.partition:
        task = tasks[task_id]
        if variant.uses_utility and task_id not in utility_ok:
            utility_ok[task_id] = {c: check_utility_constraint(c, task) for c in free_cells}
        u_ok = utility_ok.get(task_id)

        available = [c for c in free_cells if c not in occupied]
        available.sort(
            key=lambda c: (manhattan_distance(c, task.cell) + et_sum[c], rank[c])
        )
        for c in available:
            if charge_ok[c] and (u_ok is None or u_ok[c]):
                position[sensor] = c
                occupied.add(c)
                break

    verdict = (
        Verdict.SATISFIABLE if len(position) == len(instance.sensors) else Verdict.UNSATISFIABLE
    )
    return Placement(position, verdict)
