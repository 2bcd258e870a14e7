"""Command line entry point.

Exit codes: 0 success (whatever the verdict), 1 usage error, 2 invalid
config or artifact, 3 exact-search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from tenp import config
from tenp.config import ConfigError
from tenp.model import ProblemInstance, Verdict
from tenp.oracle import DEFAULT_BUDGET, BudgetExceeded, exact_solve, find_incompleteness_witness
from tenp.sim import simulate
from tenp.solver import distance_minimization
from tenp.sweep import (
    DEFAULT_LAMBDA_POINTS,
    DEFAULT_U_GRID,
    lambda_grid,
    sweep_lambda,
    sweep_utility,
    variant_summary,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _config_path(value: str) -> Path:
    # the bundled test bed is reachable by name from anywhere
    if value == "table2.cfg" and not Path(value).exists():
        return config.TABLE2_CFG
    return Path(value)


def _grid(text: str) -> List[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _sim_time(args, instance: ProblemInstance) -> float:
    if args.time is not None:
        return args.time
    if instance.simulation_time_s is not None:
        return instance.simulation_time_s
    return instance.radio.frame_s


def _emit(text: str, out: Optional[str]) -> None:
    sys.stdout.write(text)
    if out:
        Path(out).write_text(text)


def cmd_solve(args) -> int:
    inst = config.load_instance(_config_path(args.config))
    placement = distance_minimization(inst)
    _emit(config.dump_placement(placement), args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    inst = config.load_instance(_config_path(args.config))
    placement = config.parse_placement(Path(args.placement).read_text())
    config.check_placement(placement, inst)
    if placement.verdict is not Verdict.SATISFIABLE or not placement.is_total(inst):
        raise ValueError("simulation needs a total, satisfiable placement")
    m = simulate(placement, inst, _sim_time(args, inst))
    doc = {
        "avg_harvested_charge": m.avg_harvested_charge,
        "avg_task_utility": m.avg_task_utility,
        "per_sensor_charge": dict(zip(map(str, inst.sensors), m.per_sensor_charge)),
        "per_task_utility": m.per_task_utility,
    }
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    inst = config.load_instance(_config_path(args.config))
    t = _sim_time(args, inst)
    if args.axis == "lambda":
        grid = args.grid or lambda_grid(inst, args.points)
        series = sweep_lambda(inst, grid, t)
    else:
        grid = args.grid or list(DEFAULT_U_GRID)
        series = sweep_utility(inst, grid, t)
    _emit(config.series_to_csv(series), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = config.load_instance(_config_path(args.config))
    result = exact_solve(inst, args.budget)
    head = [
        f"# objective {'ABSENT' if result.objective is None else result.objective}",
        f"# explored {result.explored}",
    ]
    _emit("\n".join(head) + "\n" + config.dump_placement(result.placement), args.out)
    return EXIT_OK


def cmd_witness(args) -> int:
    inst = find_incompleteness_witness(args.seed, args.attempts, args.budget)
    if inst is None:
        _emit("ABSENT\n", None)
        return EXIT_OK
    _emit(json.dumps(config.instance_to_dict(inst), indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_summary(args) -> int:
    inst = config.load_instance(_config_path(args.config))
    lam = args.lambda_grid or lambda_grid(inst, args.points)
    us = args.u_grid or list(DEFAULT_U_GRID)
    summary = variant_summary(inst, lam, us, _sim_time(args, inst))
    _emit(config.summary_to_csv(summary), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tenp", description="Task and energy aware sensor placement.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def with_config(name, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("config", help="instance config (JSON); 'table2.cfg' names the bundled test bed")
        sp.add_argument("--out", help="also write the result to this file")
        return sp

    sp = with_config("solve", "greedy placement")
    sp.set_defaults(func=cmd_solve)

    sp = with_config("simulate", "simulate a placement artifact")
    sp.add_argument("--placement", required=True)
    sp.add_argument("--time", type=float, help="simulation time in seconds")
    sp.set_defaults(func=cmd_simulate)

    sp = with_config("sweep", "sweep lambda or u, emit CSV")
    sp.add_argument("--axis", choices=("lambda", "utility"), required=True)
    sp.add_argument("--points", type=int, default=DEFAULT_LAMBDA_POINTS,
                    help="lambda grid size between the charge bounds")
    sp.add_argument("--grid", type=_grid, help="explicit comma-separated grid")
    sp.add_argument("--time", type=float)
    sp.set_defaults(func=cmd_sweep)

    sp = with_config("oracle", "exact solve (small instances only)")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("witness", help="search for an instance the greedy solver gets wrong")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--attempts", type=int, default=10_000)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_witness)

    sp = with_config("summary", "per-variant maxima over the standard sweeps, emit CSV")
    sp.add_argument("--points", type=int, default=DEFAULT_LAMBDA_POINTS)
    sp.add_argument("--lambda-grid", type=_grid)
    sp.add_argument("--u-grid", type=_grid)
    sp.add_argument("--time", type=float)
    sp.set_defaults(func=cmd_summary)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"tenp: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConfigError, ValueError, OSError) as exc:
        print(f"tenp: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
