"""RF charging model: free-space and log-distance path loss, received charge.

All power levels are in dBm and path losses in dB. The per-frame charge is
the literal product ``(tx - path_loss - rx) * (T - tau) * efficiency``, so it
mixes a dB-domain margin with linear time and efficiency factors. We call the
result "charge units"; it can be (and with the default parameters always is)
negative. Nothing is clamped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from tenp.model import Cell, EnergyTransmitter, GridEnvironment, manhattan_distance


@dataclass(frozen=True)
class RadioParams:
    tx_power_dbm: float = 50.0
    freq_ghz: float = 2.0
    path_loss_rate: float = 2.0
    ref_distance_m: float = 5.0
    # charging-circuit efficiency, in (0, 1]
    charge_efficiency: float = 0.5
    frame_s: float = 10.0
    op_time_s: float = 9.5
    rx_power_dbm: float = 30.0

    def __post_init__(self):
        if not 0 < self.op_time_s < self.frame_s:
            raise ValueError(
                f"need 0 < op_time_s < frame_s, got op_time_s={self.op_time_s}, frame_s={self.frame_s}"
            )
        if not self.ref_distance_m > 0:
            raise ValueError(f"ref_distance_m must be > 0, got {self.ref_distance_m}")
        if not 0 < self.charge_efficiency <= 1:
            raise ValueError(f"charge_efficiency must lie in (0, 1], got {self.charge_efficiency}")
        if not 2 <= self.path_loss_rate <= 6:
            raise ValueError(f"path_loss_rate must lie in [2, 6], got {self.path_loss_rate}")
        if not self.freq_ghz > 0:
            raise ValueError(f"freq_ghz must be > 0, got {self.freq_ghz}")

    @property
    def charging_window_s(self) -> float:
        return self.frame_s - self.op_time_s


# Values of the paper's test bed (transmit power, 2 GHz, w=2, 5 m, ...).
TABLE1 = RadioParams()


def free_space_path_loss(d0_m: float, f_ghz: float) -> float:
    """Free-space loss in dB at reference distance ``d0_m`` (m) and ``f_ghz`` (GHz)."""
    if d0_m <= 0 or f_ghz <= 0:
        raise ValueError(f"distance and frequency must be > 0, got d0={d0_m}, f={f_ghz}")
    return 20.0 * math.log10(d0_m) + 20.0 * math.log10(f_ghz) + 92.5


def log_distance_path_loss(d_m: float, params: RadioParams) -> float:
    if d_m <= 0:
        raise ValueError(f"distance must be > 0, got {d_m}")
    pl0 = free_space_path_loss(params.ref_distance_m, params.freq_ghz)
    return pl0 + 10.0 * params.path_loss_rate * math.log10(d_m / params.ref_distance_m)


def received_charge_per_frame(d_m: float, params: RadioParams) -> float:
    """Charge collected from one ET at distance ``d_m`` during one charging window."""
    margin = params.tx_power_dbm - log_distance_path_loss(d_m, params) - params.rx_power_dbm
    return margin * params.charging_window_s * params.charge_efficiency


def total_received_charge(
    cell: Cell,
    ets: Sequence[EnergyTransmitter],
    env: GridEnvironment,
    params: RadioParams,
) -> float:
    total = 0.0
    for et in ets:
        d = manhattan_distance(cell, et.cell)
        if d == 0:
            raise ValueError(f"cell {cell.as_tuple()} coincides with ET {et.id}")
        total += received_charge_per_frame(d * env.cell_size_m, params)
    return total


def charge_bounds(
    env: GridEnvironment,
    ets: Sequence[EnergyTransmitter],
    params: RadioParams,
) -> Tuple[float, float]:
    """Smallest and largest total charge over the free cells of ``env``."""
    if not env.free_cells:
        raise ValueError("environment has no free cells")
    charges = [total_received_charge(c, ets, env, params) for c in env.free_cells]
    return min(charges), max(charges)
