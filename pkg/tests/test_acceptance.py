"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest terminal
summary (see ``conftest.pytest_terminal_summary``).
"""

import contextlib
import math
import random
import subprocess
import sys
import time

import pytest

from tenp.constraints import check_cell, check_utility_constraint
from tenp.model import Cell, EnergyTransmitter, ProblemInstance, SensorTaskPartition, Task, Variant, Verdict, build_environment
from tenp.oracle import exact_solve, objective_value, random_instance
from tenp.radio import TABLE1, charge_bounds, free_space_path_loss, log_distance_path_loss, received_charge_per_frame, total_received_charge
from tenp.sim import simulate
from tenp.solver import distance_minimization
from tenp.sweep import DEFAULT_U_GRID, lambda_grid, sweep_lambda, sweep_utility, variant_summary

from conftest import brute_force_optimum

RESULTS = []


@contextlib.contextmanager
def criterion(number, title):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        RESULTS.append(f"FAIL  AC{number:<2} {title}  ({time.perf_counter() - start:.2f}s)")
        raise
    RESULTS.append(f"PASS  AC{number:<2} {title}  ({time.perf_counter() - start:.2f}s)")


def non_decreasing(xs):
    return all(a <= b for a, b in zip(xs, xs[1:]))


def test_ac01_radio_arithmetic():
    with criterion(1, "radio arithmetic exact to 1e-9"):
        assert abs(free_space_path_loss(5, 2) - 112.5) <= 1e-9
        assert abs(log_distance_path_loss(50, TABLE1) - 132.5) <= 1e-9
        assert abs(received_charge_per_frame(5, TABLE1) - (-23.125)) <= 1e-9


def test_ac02_utility_predicate_exhaustive():
    with criterion(2, "utility predicate == integer reformulation on grids up to 10x10"):
        t0 = time.perf_counter()
        for u in (0.1, 0.2, 0.25, 0.26, 0.5, 1.0):
            limit = math.floor(1 / u)
            for n in range(1, 11):
                for tx in range(1, n + 1):
                    for ty in range(1, n + 1):
                        task = Task(1, Cell(tx, ty), u)
                        for x in range(1, n + 1):
                            for y in range(1, n + 1):
                                d = abs(x - tx) + abs(y - ty)
                                if d:
                                    assert check_utility_constraint(Cell(x, y), task) == (d <= limit)
        # inclusive boundary: utility exactly equal to the requirement passes
        for d in (1, 2, 4, 5, 10):
            assert check_utility_constraint(Cell(1 + d, 1), Task(1, Cell(1, 1), 1 / d))
        assert time.perf_counter() - t0 < 1.0


def test_ac03_greedy_soundness():
    with criterion(3, "greedy soundness and verdict law on 500 random instances"):
        t0 = time.perf_counter()
        rng = random.Random(3)
        seen = set()
        for _ in range(500):
            inst = random_instance(rng, max_grid=6, max_sensors=6, max_ets=3, max_tasks=3)
            seen.add(inst.variant)
            p = distance_minimization(inst)
            task_of = inst.partition.task_of()
            for s, c in p.assignments.items():
                assert check_cell(inst, c, inst.task(task_of[s]))
            assert len(set(p.assignments.values())) == len(p.assignments)
            assert (len(p.assignments) == len(inst.sensors)) == (p.verdict is Verdict.SATISFIABLE)
        assert seen == set(Variant)
        assert time.perf_counter() - t0 < 30


@pytest.fixture(scope="module")
def oracle_suite():
    t0 = time.perf_counter()
    rng = random.Random(4)
    suite = []
    for _ in range(200):
        inst = random_instance(rng, max_grid=4, max_sensors=3, max_ets=2)
        suite.append((inst, distance_minimization(inst), exact_solve(inst)))
    return suite, time.perf_counter() - t0


def test_ac04_oracle_dominance_and_incompleteness(oracle_suite, witness):
    with criterion(4, "oracle dominance, greedy SAT => oracle SAT, pinned incompleteness witness"):
        suite, build_time = oracle_suite
        verdicts = {exact.placement.verdict for _, _, exact in suite}
        assert verdicts == set(Verdict)
        for inst, greedy, exact in suite:
            if greedy.verdict is Verdict.SATISFIABLE:
                assert exact.placement.verdict is Verdict.SATISFIABLE
                assert exact.objective <= objective_value(greedy, inst)
        assert distance_minimization(witness).verdict is Verdict.UNSATISFIABLE
        assert exact_solve(witness).placement.verdict is Verdict.SATISFIABLE
        assert build_time < 120


def test_ac05_oracle_self_check(oracle_suite):
    with criterion(5, "oracle verdicts match prune-free enumeration on the same 200 instances"):
        for inst, _, exact in oracle_suite[0]:
            bf = brute_force_optimum(inst)
            assert (bf is not None) == (exact.placement.verdict is Verdict.SATISFIABLE)
            if bf is not None:
                assert bf[0] == exact.objective


def test_ac06_setting_one_trends(table2):
    with criterion(6, "TENP lambda sweep: charge non-decreasing, utility non-increasing, stall present"):
        t0 = time.perf_counter()
        inst = table2.with_uniform_utility(0.2).with_variant(Variant.TENP)
        series = sweep_lambda(inst, lambda_grid(inst, 18), 100)
        sat = [p.metrics for p in series.sat_points]
        assert sat
        assert non_decreasing([m.avg_harvested_charge for m in sat])
        assert non_decreasing([-m.avg_task_utility for m in sat])
        assert len(series.stalls) >= 1
        assert time.perf_counter() - t0 < 10


def test_ac07_tsp_utility_trend(table2):
    with criterion(7, "TSP utility sweep: avg task utility non-decreasing"):
        t0 = time.perf_counter()
        series = sweep_utility(table2.with_variant(Variant.TSP), DEFAULT_U_GRID, 100)
        sat = [p.metrics for p in series.sat_points]
        assert len(sat) >= 2
        assert non_decreasing([m.avg_task_utility for m in sat])
        assert time.perf_counter() - t0 < 10


def test_ac08_variant_orderings(table2):
    with criterion(8, "variant maxima: utility TSP>=TENP>=ESP, charge ESP>=TENP>=TSP"):
        t0 = time.perf_counter()
        s = variant_summary(table2, lambda_grid(table2, 18), DEFAULT_U_GRID, 100)
        tenp, esp, tsp = s[Variant.TENP], s[Variant.ESP], s[Variant.TSP]
        assert tsp.max_avg_utility >= tenp.max_avg_utility >= esp.max_avg_utility
        assert esp.max_avg_charge >= tenp.max_avg_charge >= tsp.max_avg_charge
        assert time.perf_counter() - t0 < 30


def tractability_instance(n_sensors, seed=9):
    rng = random.Random(seed)
    n = 50
    cells = rng.sample([Cell(x, y) for y in range(1, n + 1) for x in range(1, n + 1)], 20)
    task_cells, et_cells = cells[:10], cells[10:]
    env = build_environment(n, 1.0, task_cells, et_cells)
    tasks = tuple(Task(j, c, 0.05) for j, c in enumerate(task_cells, 1))
    ets = tuple(EnergyTransmitter(k, c) for k, c in enumerate(et_cells, 1))
    groups = [(j, list(range(j, n_sensors + 1, 10))) for j in range(1, 11)]
    lo, hi = charge_bounds(env, ets, TABLE1)
    return ProblemInstance(env, tasks, ets, SensorTaskPartition.from_lists(groups),
                           lo + 0.25 * (hi - lo), TABLE1, Variant.TENP)


def test_ac09_tractability():
    with criterion(9, "50x50 grid, 500 sensors under 10 s; 500/250 runtime ratio <= 6"):
        half, full = tractability_instance(250), tractability_instance(500)
        assert len(full.sensors) == 500 and len(half.sensors) == 250
        t0 = time.perf_counter()
        distance_minimization(half)
        t_half = time.perf_counter() - t0
        t0 = time.perf_counter()
        p = distance_minimization(full)
        t_full = time.perf_counter() - t0
        assert len(p.assignments) > 0
        assert t_full < 10
        assert t_full / t_half <= 6


def test_ac10_simulation_identity(table2):
    with criterion(10, "simulation equals closed-form sums to 1e-9 rel, invariant over 1/5/20 frames"):
        rng = random.Random(10)
        instances = [table2] + [
            random_instance(rng, max_grid=6, max_sensors=6, max_ets=3, max_tasks=3) for _ in range(50)
        ]
        checked = 0
        for inst in instances:
            p = distance_minimization(inst)
            if p.verdict is not Verdict.SATISFIABLE or not inst.sensors:
                continue
            env = inst.environment
            charges = [total_received_charge(p.assignments[s], inst.ets, env, inst.radio) for s in inst.sensors]
            groups = dict(inst.partition.groups)
            utils = [
                sum(1 / (abs(p.assignments[s].x - t.cell.x) + abs(p.assignments[s].y - t.cell.y)) for s in groups[t.id])
                for t in inst.tasks
            ]
            want_c = sum(charges) / (len(charges) * inst.radio.frame_s)
            want_u = sum(utils) / len(utils)
            for frames in (1, 5, 20):
                m = simulate(p, inst, inst.radio.frame_s * frames)
                assert m.avg_harvested_charge == pytest.approx(want_c, rel=1e-9)
                assert m.avg_task_utility == pytest.approx(want_u, rel=1e-9)
            checked += 1
        assert checked >= 10


def test_ac11_summary_deterministic():
    with criterion(11, "two summary runs on table2.cfg give byte-identical CSV"):
        cmd = [sys.executable, "-m", "tenp", "summary", "table2.cfg"]
        a = subprocess.run(cmd, capture_output=True, check=True).stdout
        b = subprocess.run(cmd, capture_output=True, check=True).stdout
        assert a and a == b
