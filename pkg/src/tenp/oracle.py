"""Exact solver for small instances, and incompleteness-witness search.

``exact_solve`` is a depth-first search over sensors in partition order,
trying free cells in row-major order. Branches are cut when a cell fails the
active constraints or when the partial objective plus an optimistic bound on
the remaining sensors cannot beat the incumbent. Because the incumbent is only
replaced by strictly better placements, the first optimum found is the
lexicographically smallest one in (sensor order, row-major cell index).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional

from tenp.constraints import check_cell
from tenp.model import (
    Cell,
    EnergyTransmitter,
    Placement,
    ProblemInstance,
    SensorTaskPartition,
    Task,
    Variant,
    Verdict,
    build_environment,
)
from tenp.radio import RadioParams, charge_bounds
from tenp.solver import combined_distance, distance_minimization

DEFAULT_BUDGET = 10_000_000


class BudgetExceeded(RuntimeError):
    """The exact search visited more nodes than its budget allows."""


@dataclass(frozen=True)
class OptimalResult:
    placement: Placement
    objective: Optional[int]
    explored: int


def objective_value(placement: Placement, instance: ProblemInstance) -> int:
    """Sum over sensors of distance to own task plus distances to all ETs."""
    if len(placement.assignments) != len(instance.sensors):
        raise ValueError(
            f"objective needs a total placement; {len(placement.assignments)} of "
            f"{len(instance.sensors)} sensors are assigned"
        )
    tasks = {t.id: t for t in instance.tasks}
    return sum(
        combined_distance(placement.assignments[s], tasks[t], instance.ets)
        for t, s in instance.partition
    )


def exact_solve(instance: ProblemInstance, budget: int = DEFAULT_BUDGET) -> OptimalResult:
    free = instance.environment.free_cells
    tasks = {t.id: t for t in instance.tasks}
    order = list(instance.partition)

    # feasible cells and their costs, per sensor in processing order
    options: List[List[tuple]] = []
    per_task = {}
    for task_id, _ in order:
        if task_id not in per_task:
            task = tasks[task_id]
            per_task[task_id] = [
                (i, c, combined_distance(c, task, instance.ets))
                for i, c in enumerate(free)
                if check_cell(instance, c, task)
            ]
        options.append(per_task[task_id])

    # optimistic completion cost from depth k onwards (ignores occupancy)
    tail = [0] * (len(order) + 1)
    for k in range(len(order) - 1, -1, -1):
        cheapest = min((cost for _, _, cost in options[k]), default=None)
        tail[k] = tail[k + 1] + (cheapest if cheapest is not None else 0)

    best_cost: Optional[int] = None
    best: List[Cell] = []
    chosen: List[Cell] = []
    used = [False] * len(free)
    explored = 0

    def search(k: int, cost: int) -> None:
        nonlocal best_cost, best, explored
        if k == len(order):
            if best_cost is None or cost < best_cost:
                best_cost, best = cost, list(chosen)
            return
        for i, c, step in options[k]:
            if used[i]:
                continue
            explored += 1
            if explored > budget:
                raise BudgetExceeded(f"exact search exceeded {budget} nodes")
            if best_cost is not None and cost + step + tail[k + 1] >= best_cost:
                continue
            used[i] = True
            chosen.append(c)
            search(k + 1, cost + step)
            chosen.pop()
            used[i] = False

    if all(options):
        search(0, 0)

    if best_cost is None:
        return OptimalResult(Placement({}, Verdict.UNSATISFIABLE), None, explored)
    assignments = {s: c for (_, s), c in zip(order, best)}
    return OptimalResult(Placement(assignments, Verdict.SATISFIABLE), best_cost, explored)


def random_instance(
    rng: random.Random,
    max_grid: int = 5,
    max_sensors: int = 4,
    max_ets: int = 2,
    max_tasks: int = 2,
    variants=(Variant.TENP, Variant.TSP, Variant.ESP),
    radio: RadioParams | None = None,
) -> ProblemInstance:
    """Draw a small random instance; all randomness comes from ``rng``."""
    radio = radio or RadioParams()
    while True:
        n = rng.randint(2, max_grid)
        n_tasks = rng.randint(1, max_tasks)
        n_ets = rng.randint(0, max_ets)
        n_sensors = rng.randint(0, max_sensors)
        if n_tasks + n_ets + max(n_sensors, 1) <= n * n:
            break
    cells = [Cell(x, y) for y in range(1, n + 1) for x in range(1, n + 1)]
    picked = rng.sample(cells, n_tasks + n_ets)
    task_cells, et_cells = picked[:n_tasks], picked[n_tasks:]
    env = build_environment(n, 1.0, task_cells, et_cells)

    tasks = tuple(
        Task(j, c, rng.choice((0.1, 0.2, 0.25, 1 / 3, 0.5, 1.0)))
        for j, c in enumerate(task_cells, 1)
    )
    ets = tuple(EnergyTransmitter(k, c) for k, c in enumerate(et_cells, 1))
    groups = {j: [] for j in range(1, n_tasks + 1)}
    for s in range(1, n_sensors + 1):
        groups[rng.randint(1, n_tasks)].append(s)
    partition = SensorTaskPartition.from_lists(groups.items())

    if ets:
        lo, hi = charge_bounds(env, ets, radio)
        lam = lo + (hi - lo) * rng.random()
    else:
        lam = rng.choice((-1.0, 0.0))
    variant = rng.choice(tuple(variants))
    return ProblemInstance(env, tasks, ets, partition, lam, radio, Variant(variant))


def find_incompleteness_witness(
    seed: int, attempts: int, budget: int = DEFAULT_BUDGET
) -> Optional[ProblemInstance]:
    """First random instance (from ``seed``) where the greedy fails but a placement exists."""
    rng = random.Random(seed)
    for _ in range(attempts):
        inst = random_instance(rng)
        if distance_minimization(inst).verdict is Verdict.SATISFIABLE:
            continue
        try:
            result = exact_solve(inst, budget)
        except BudgetExceeded:
            continue
        if result.placement.verdict is Verdict.SATISFIABLE:
            return inst
    return None
