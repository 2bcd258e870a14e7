"""Instance config files, placement artifacts and CSV emission.

Instance configs are JSON documents with a strict schema: unknown keys are
errors, and every validation failure names the offending field path. Example
(abridged)::

    {
      "grid": {"n": 10, "cell_size_m": 1.0},
      "tasks": [{"x": 1, "y": 10, "u": 0.2}, ...],
      "ets": [{"x": 9, "y": 1}, ...],
      "partition": [[2, 3, 4], ...],
      "lambda": -55.0,
      "radio": {"tx_power_dbm": 50, ...},
      "variant": "TENP",
      "simulation_time_s": 100
    }

``partition[j]`` lists the sensor ids of ``tasks[j]``. Task and ET ids are
1-based positions in their lists.
"""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import asdict, fields
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping

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
from tenp.radio import RadioParams

log = logging.getLogger(__name__)

CSV_HEADER = ("param", "verdict", "placed", "avg_charge", "avg_utility", "stall_id")
SUMMARY_HEADER = ("variant", "max_avg_utility", "max_avg_charge")
TABLE2_CFG = Path(__file__).with_name("data") / "table2.cfg"

_TOP_KEYS = {
    "grid", "tasks", "ets", "partition", "lambda", "radio", "variant", "simulation_time_s",
}
_RADIO_KEYS = [f.name for f in fields(RadioParams)]


class ConfigError(ValueError):
    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


def fmt(value: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    return format(value, ".17g")


def _keys(obj: Any, path: str, allowed: Iterable[str], required: Iterable[str]) -> None:
    if not isinstance(obj, dict):
        raise ConfigError(path, f"expected an object, got {type(obj).__name__}")
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise ConfigError(path, f"unknown field(s) {', '.join(unknown)}")
    for key in required:
        if key not in obj:
            raise ConfigError(f"{path}.{key}" if path else key, "missing required field")


def _number(obj: Any, path: str) -> float:
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise ConfigError(path, f"expected a number, got {obj!r}")
    return float(obj)


def _integer(obj: Any, path: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise ConfigError(path, f"expected an integer, got {obj!r}")
    return obj


def _list(obj: Any, path: str) -> list:
    if not isinstance(obj, list):
        raise ConfigError(path, f"expected a list, got {type(obj).__name__}")
    return obj


def instance_from_dict(doc: Mapping[str, Any]) -> ProblemInstance:
    _keys(doc, "", _TOP_KEYS, ["grid", "tasks", "ets", "partition", "lambda", "radio"])

    grid = doc["grid"]
    _keys(grid, "grid", ["n", "cell_size_m"], ["n"])
    n = _integer(grid["n"], "grid.n")
    if "cell_size_m" in grid:
        cell_size = _number(grid["cell_size_m"], "grid.cell_size_m")
    else:
        log.info("grid.cell_size_m not given; using 1.0 m")
        cell_size = 1.0

    task_cells, us = [], []
    for j, t in enumerate(_list(doc["tasks"], "tasks")):
        _keys(t, f"tasks[{j}]", ["x", "y", "u"], ["x", "y", "u"])
        task_cells.append(Cell(_integer(t["x"], f"tasks[{j}].x"), _integer(t["y"], f"tasks[{j}].y")))
        us.append(_number(t["u"], f"tasks[{j}].u"))
    et_cells = []
    for k, e in enumerate(_list(doc["ets"], "ets")):
        _keys(e, f"ets[{k}]", ["x", "y"], ["x", "y"])
        et_cells.append(Cell(_integer(e["x"], f"ets[{k}].x"), _integer(e["y"], f"ets[{k}].y")))

    try:
        env = build_environment(n, cell_size, task_cells, et_cells)
    except ValueError as exc:
        raise ConfigError("grid", str(exc)) from None

    tasks = []
    for j, (c, u) in enumerate(zip(task_cells, us)):
        try:
            tasks.append(Task(j + 1, c, u))
        except ValueError as exc:
            raise ConfigError(f"tasks[{j}].u", str(exc)) from None
    ets = tuple(EnergyTransmitter(k + 1, c) for k, c in enumerate(et_cells))

    groups = _list(doc["partition"], "partition")
    if len(groups) != len(tasks):
        raise ConfigError("partition", f"has {len(groups)} groups for {len(tasks)} tasks")
    parsed = []
    for j, g in enumerate(groups):
        ids = [_integer(s, f"partition[{j}][{i}]") for i, s in enumerate(_list(g, f"partition[{j}]"))]
        parsed.append((j + 1, ids))
    try:
        partition = SensorTaskPartition.from_lists(parsed)
    except ValueError as exc:
        raise ConfigError("partition", str(exc)) from None

    lam = _number(doc["lambda"], "lambda")

    radio_doc = doc["radio"]
    _keys(radio_doc, "radio", _RADIO_KEYS, _RADIO_KEYS)
    try:
        radio = RadioParams(**{k: _number(radio_doc[k], f"radio.{k}") for k in _RADIO_KEYS})
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError("radio", str(exc)) from None

    try:
        variant = Variant(doc.get("variant", "TENP"))
    except ValueError:
        raise ConfigError("variant", f"must be one of TENP, TSP, ESP, got {doc['variant']!r}") from None

    sim_time = None
    if "simulation_time_s" in doc:
        sim_time = _number(doc["simulation_time_s"], "simulation_time_s")

    try:
        return ProblemInstance(env, tuple(tasks), ets, partition, lam, radio, variant, sim_time)
    except ValueError as exc:
        raise ConfigError("instance", str(exc)) from None


def instance_to_dict(instance: ProblemInstance) -> Dict[str, Any]:
    env = instance.environment
    groups = dict(instance.partition.groups)
    doc = {
        "grid": {"n": env.n, "cell_size_m": env.cell_size_m},
        "tasks": [{"x": t.cell.x, "y": t.cell.y, "u": t.utility_requirement} for t in instance.tasks],
        "ets": [{"x": e.cell.x, "y": e.cell.y} for e in instance.ets],
        "partition": [list(groups[t.id]) for t in instance.tasks],
        "lambda": instance.lam,
        "radio": asdict(instance.radio),
        "variant": instance.variant.value,
    }
    if instance.simulation_time_s is not None:
        doc["simulation_time_s"] = instance.simulation_time_s
    return doc


def load_instance(path) -> ProblemInstance:
    text = Path(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(str(path), f"not valid JSON ({exc})") from None
    return instance_from_dict(doc)


def save_instance(instance: ProblemInstance, path) -> None:
    """Write ``instance`` in the config format, with task ids renumbered by position."""
    Path(path).write_text(json.dumps(instance_to_dict(instance), indent=2) + "\n")


def load_table2() -> ProblemInstance:
    return load_instance(TABLE2_CFG)


# -- placement artifacts ------------------------------------------------------
#
#   verdict SATISFIABLE
#   2 3 4        <- sensor id, x, y

def dump_placement(placement: Placement) -> str:
    lines = [f"verdict {placement.verdict.value}"]
    for s, c in placement.assignments.items():
        lines.append(f"{s} {c.x} {c.y}")
    return "\n".join(lines) + "\n"


def parse_placement(text: str) -> Placement:
    verdict = None
    assignments: Dict[int, Cell] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "verdict":
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: malformed verdict line")
            verdict = Verdict(parts[1])
            continue
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'sensor x y', got {raw!r}")
        s, x, y = (int(p) for p in parts)
        if s in assignments:
            raise ValueError(f"line {lineno}: sensor {s} assigned twice")
        assignments[s] = Cell(x, y)
    if verdict is None:
        raise ValueError("placement file has no verdict line")
    return Placement(assignments, verdict)


def check_placement(placement: Placement, instance: ProblemInstance) -> None:
    """Raise ``ValueError`` unless ``placement`` is structurally valid for ``instance``."""
    free = set(instance.environment.free_cells)
    sensors = set(instance.sensors)
    used = set()
    for s, c in placement.assignments.items():
        if s not in sensors:
            raise ValueError(f"sensor {s} is not part of the instance")
        if c not in free:
            raise ValueError(f"sensor {s} sits on non-free cell {c.as_tuple()}")
        if c in used:
            raise ValueError(f"cell {c.as_tuple()} holds more than one sensor")
        used.add(c)


# -- CSV ------------------------------------------------------------------------

def series_rows(series) -> List[List[str]]:
    rows = []
    for i, p in enumerate(series.points):
        m = p.metrics
        sid = series.stall_id(i)
        rows.append([
            fmt(p.param_value),
            p.verdict.value,
            str(p.placed_count),
            fmt(m.avg_harvested_charge) if m else "",
            fmt(m.avg_task_utility) if m else "",
            "" if sid is None else str(sid),
        ])
    return rows


def series_to_csv(series) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(series_rows(series))
    return buf.getvalue()


def read_series_csv(text: str) -> List[Dict[str, str]]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    return list(reader)


def summary_to_csv(summary) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SUMMARY_HEADER)
    for variant in (Variant.TENP, Variant.ESP, Variant.TSP):
        m = summary[variant]
        w.writerow([
            variant.value,
            "" if m.max_avg_utility is None else fmt(m.max_avg_utility),
            "" if m.max_avg_charge is None else fmt(m.max_avg_charge),
        ])
    return buf.getvalue()
