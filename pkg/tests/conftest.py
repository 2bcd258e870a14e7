import itertools
from pathlib import Path

import pytest

from tenp.config import load_instance, load_table2
from tenp.constraints import check_cell
from tenp.model import (
    Cell,
    EnergyTransmitter,
    ProblemInstance,
    SensorTaskPartition,
    Task,
    Variant,
    build_environment,
)
from tenp.radio import TABLE1, RadioParams
from tenp.solver import combined_distance

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def table2():
    return load_table2()


@pytest.fixture(scope="session")
def witness():
    return load_instance(FIXTURES / "witness_seed1.cfg")


def make_instance(n, tasks, ets, groups, lam=-1e9, variant=Variant.TENP,
                  radio: RadioParams = TABLE1, cell_size_m=1.0):
    """Build an instance from plain tuples.

    ``tasks`` is a list of ``((x, y), u)``, ``ets`` a list of ``(x, y)`` and
    ``groups`` a list of sensor-id lists, one per task.
    """
    env = build_environment(n, cell_size_m, [Cell(*xy) for xy, _ in tasks], [Cell(*xy) for xy in ets])
    task_objs = tuple(Task(j, Cell(*xy), u) for j, (xy, u) in enumerate(tasks, 1))
    et_objs = tuple(EnergyTransmitter(k, Cell(*xy)) for k, xy in enumerate(ets, 1))
    partition = SensorTaskPartition.from_lists(list(zip(range(1, len(tasks) + 1), groups)))
    return ProblemInstance(env, task_objs, et_objs, partition, lam, radio, variant)


def brute_force_optimum(instance: ProblemInstance):
    """Prune-free exhaustive search: (objective, assignment) or None if infeasible.

    Tries every injective map from sensors to free cells, in lexicographic
    order, and keeps the first strictly cheaper feasible one.
    """
    order = list(instance.partition)
    tasks = {t.id: t for t in instance.tasks}
    best = None
    for cells in itertools.permutations(instance.environment.free_cells, len(order)):
        if not all(check_cell(instance, c, tasks[t]) for (t, _), c in zip(order, cells)):
            continue
        cost = sum(combined_distance(c, tasks[t], instance.ets) for (t, _), c in zip(order, cells))
        if best is None or cost < best[0]:
            best = (cost, {s: c for (_, s), c in zip(order, cells)})
    return best


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
