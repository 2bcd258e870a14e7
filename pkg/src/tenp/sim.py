"""Frame-structured charging simulation over a fixed placement.

Time advances in 1 s steps. At the first step of every frame each sensor
collects the charge of one charging window (``frame_s - op_time_s`` seconds,
which may be fractional). The remaining operation time is handed to
:func:`perform_network_operation` once per completed second.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List

from tenp.constraints import sensor_utility
from tenp.model import Placement, ProblemInstance
from tenp.radio import total_received_charge


@dataclass(frozen=True)
class SimMetrics:
    avg_harvested_charge: float
    avg_task_utility: float
    per_sensor_charge: List[float]
    per_task_utility: List[float]


def perform_network_operation() -> None:
    """Placeholder for sensing and data transmission; intentionally does nothing."""


def simulate(
    placement: Placement,
    instance: ProblemInstance,
    simulation_time: float,
    network_operation: Callable[[], None] = perform_network_operation,
) -> SimMetrics:
    sensors = instance.sensors
    if len(placement.assignments) != len(sensors) or any(
        s not in placement.assignments for s in sensors
    ):
        raise ValueError("simulation needs a total placement")
    params = instance.radio
    frame = params.frame_s
    if frame != int(frame):
        raise ValueError(f"frame_s must be a whole number of seconds, got {frame}")
    frame = int(frame)
    frames = simulation_time / frame
    if not (simulation_time > 0 and frames == int(frames)):
        raise ValueError(
            f"simulation time {simulation_time} is not a positive multiple of the frame size {frame}"
        )
    frames = int(frames)
    steps = frames * frame

    env = instance.environment
    per_frame = {
        s: total_received_charge(placement.assignments[s], instance.ets, env, params)
        for s in sensors
    }
    window = params.charging_window_s
    harvested: Dict[int, float] = dict.fromkeys(sensors, 0.0)
    op_time = 0.0
    op_calls = 0

    for i in range(steps):
        step_op = 1.0
        if i % frame == 0:
            for s in sensors:
                harvested[s] += per_frame[s]
        # seconds of this step that fall inside the frame's charging window
        into_frame = i % frame
        step_op -= min(max(window - into_frame, 0.0), 1.0)
        op_time += step_op
        while op_calls + 1 <= op_time + 1e-9:
            network_operation()
            op_calls += 1

    per_sensor = [harvested[s] / frames for s in sensors]
    n = len(sensors)
    avg_charge = math.fsum(per_sensor) / (n * frame) if n else 0.0

    per_task = []
    for task in instance.tasks:
        group = dict(instance.partition.groups)[task.id]
        per_task.append(math.fsum(sensor_utility(placement.assignments[s], task) for s in group))
    avg_utility = math.fsum(per_task) / len(per_task) if per_task else 0.0
    return SimMetrics(avg_charge, avg_utility, per_sensor, per_task)
