"""Grid environment, problem instance and placement data model.

Coordinates are 1-based: ``Cell(x=1, y=1)`` is the bottom-left corner and
``Cell(x=n, y=n)`` the opposite one. Free cells are always enumerated in
row-major order with ``x`` varying fastest, which is the tie-breaking order
used by the solvers.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Dict, Iterator, List, Sequence, Tuple

if TYPE_CHECKING:
    from tenp.radio import RadioParams


class Variant(str, enum.Enum):
    """Which constraint families are active."""

    TENP = "TENP"  # utility and charging
    TSP = "TSP"    # utility only
    ESP = "ESP"    # charging only

    @property
    def uses_utility(self) -> bool:
        return self is not Variant.ESP

    @property
    def uses_charging(self) -> bool:
        return self is not Variant.TSP


class Verdict(str, enum.Enum):
    SATISFIABLE = "SATISFIABLE"
    UNSATISFIABLE = "UNSATISFIABLE"


@dataclass(frozen=True)
class Cell:
    x: int
    y: int

    def as_tuple(self) -> Tuple[int, int]:
        return (self.x, self.y)


def manhattan_distance(a: Cell, b: Cell) -> int:
    return abs(a.x - b.x) + abs(a.y - b.y)


def row_major_index(cell: Cell, n: int) -> int:
    """1-based index ``(y - 1) * n + x`` of a cell in an ``n`` x ``n`` grid."""
    return (cell.y - 1) * n + cell.x


@dataclass(frozen=True)
class GridEnvironment:
    n: int
    cell_size_m: float
    et_cells: Tuple[Cell, ...]
    task_cells: Tuple[Cell, ...]
    free_cells: Tuple[Cell, ...]

    def in_bounds(self, cell: Cell) -> bool:
        return 1 <= cell.x <= self.n and 1 <= cell.y <= self.n

    def index(self, cell: Cell) -> int:
        return row_major_index(cell, self.n)

    def physical_distance(self, a: Cell, b: Cell) -> float:
        return manhattan_distance(a, b) * self.cell_size_m


def build_environment(
    n: int,
    cell_size_m: float = 1.0,
    task_cells: Sequence[Cell] = (),
    et_cells: Sequence[Cell] = (),
) -> GridEnvironment:
    """Partition an ``n`` x ``n`` grid into task, ET and free cells."""
    if n < 1:
        raise ValueError(f"grid side must be >= 1, got {n}")
    if not cell_size_m > 0:
        raise ValueError(f"cell_size_m must be > 0, got {cell_size_m}")
    task_cells = tuple(task_cells)
    et_cells = tuple(et_cells)

    for kind, cells in (("task", task_cells), ("ET", et_cells)):
        seen: Dict[Cell, int] = {}
        for i, c in enumerate(cells):
            if not (1 <= c.x <= n and 1 <= c.y <= n):
                raise ValueError(f"{kind} cell {i} at {c.as_tuple()} is outside the {n}x{n} grid")
            if c in seen:
                raise ValueError(
                    f"duplicate {kind} cell {c.as_tuple()} at indices {seen[c]} and {i}"
                )
            seen[c] = i

    et_index = {c: k for k, c in enumerate(et_cells)}
    for j, c in enumerate(task_cells):
        if c in et_index:
            raise ValueError(
                f"task cell {j} and ET cell {et_index[c]} overlap at {c.as_tuple()}"
            )

    reserved = set(task_cells) | set(et_cells)
    free = tuple(
        Cell(x, y) for y in range(1, n + 1) for x in range(1, n + 1) if Cell(x, y) not in reserved
    )
    return GridEnvironment(n, float(cell_size_m), et_cells, task_cells, free)


@dataclass(frozen=True)
class Task:
    id: int
    cell: Cell
    utility_requirement: float

    def __post_init__(self):
        # utility is 1/d with d >= 1, so anything above 1 can never be met
        if not 0 < self.utility_requirement <= 1:
            raise ValueError(
                f"task {self.id}: utility requirement must lie in (0, 1], "
                f"got {self.utility_requirement}"
            )


@dataclass(frozen=True)
class EnergyTransmitter:
    id: int
    cell: Cell


@dataclass(frozen=True)
class SensorTaskPartition:
    """Ordered ``(task id, sensor ids)`` groups; also the solver's processing order."""

    groups: Tuple[Tuple[int, Tuple[int, ...]], ...]

    def __post_init__(self):
        seen = set()
        tasks = set()
        for task_id, sensors in self.groups:
            if task_id in tasks:
                raise ValueError(f"task {task_id} appears in more than one partition group")
            tasks.add(task_id)
            for s in sensors:
                if s in seen:
                    raise ValueError(f"sensor {s} is associated with more than one task")
                seen.add(s)

    @classmethod
    def from_lists(cls, groups) -> "SensorTaskPartition":
        return cls(tuple((int(t), tuple(s)) for t, s in groups))

    @property
    def sensors(self) -> List[int]:
        return [s for _, group in self.groups for s in group]

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        """Yield ``(task id, sensor id)`` in processing order."""
        for task_id, group in self.groups:
            for s in group:
                yield task_id, s

    def task_of(self) -> Dict[int, int]:
        return {s: t for t, s in self}


@dataclass(frozen=True)
class ProblemInstance:
    environment: GridEnvironment
    tasks: Tuple[Task, ...]
    ets: Tuple[EnergyTransmitter, ...]
    partition: SensorTaskPartition
    lam: float
    radio: RadioParams
    variant: Variant = Variant.TENP
    simulation_time_s: float | None = None

    def __post_init__(self):
        env = self.environment
        if len(self.tasks) != len(env.task_cells):
            raise ValueError("number of tasks differs from number of task cells")
        if len(self.ets) != len(env.et_cells):
            raise ValueError("number of ETs differs from number of ET cells")
        for i, t in enumerate(self.tasks):
            if t.cell != env.task_cells[i]:
                raise ValueError(f"task {t.id} is not at task cell {i}")
        for k, e in enumerate(self.ets):
            if e.cell != env.et_cells[k]:
                raise ValueError(f"ET {e.id} is not at ET cell {k}")
        ids = [t.id for t in self.tasks]
        if len(set(ids)) != len(ids):
            raise ValueError("task ids must be unique")
        group_ids = [t for t, _ in self.partition.groups]
        if sorted(group_ids) != sorted(ids):
            raise ValueError(
                f"partition groups {group_ids} do not match task ids {ids}"
            )
        if len(self.sensors) > len(env.free_cells):
            raise ValueError(
                f"{len(self.sensors)} sensors do not fit in {len(env.free_cells)} free cells"
            )

    @property
    def sensors(self) -> List[int]:
        return self.partition.sensors

    def task(self, task_id: int) -> Task:
        for t in self.tasks:
            if t.id == task_id:
                return t
        raise KeyError(task_id)

    def with_lambda(self, lam: float) -> "ProblemInstance":
        return replace(self, lam=float(lam))

    def with_variant(self, variant: Variant) -> "ProblemInstance":
        return replace(self, variant=Variant(variant))

    def with_uniform_utility(self, u: float) -> "ProblemInstance":
        tasks = tuple(Task(t.id, t.cell, float(u)) for t in self.tasks)
        return replace(self, tasks=tasks)


@dataclass(frozen=True)
class Placement:
    assignments: Dict[int, Cell] = field(default_factory=dict)
    verdict: Verdict = Verdict.SATISFIABLE

    def is_total(self, instance: ProblemInstance) -> bool:
        return len(self.assignments) == len(instance.sensors)
