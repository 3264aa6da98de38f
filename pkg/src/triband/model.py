"""Core domain types for the triple-band backhaul scheduler.

All quantities are stored in SI linear units (watts, Hz, meters, seconds,
bits/s).  dB / dBm / dBi values are converted at configuration-parse or
report time, never carried through the math.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np


class Band(Enum):
    """Transmission band identifiers.

    MM28, EBAND and THZ form the triple-band system; SUB6 and MM60 exist
    for the dual-band comparison scheme.
    """

    MM28 = "mm28"    # 28 GHz mmWave
    EBAND = "eband"  # 73 GHz E-band
    THZ = "thz"      # 340 GHz
    SUB6 = "sub6"    # 2.4 GHz (dual-band scheme)
    MM60 = "mm60"    # 60 GHz (dual-band scheme)


# Integer codes used in schedule matrices; 0 means idle.
BAND_CODE = {band: i + 1 for i, band in enumerate(Band)}
CODE_BAND = {code: band for band, code in BAND_CODE.items()}

IDLE = 0

#: Bands that use the free-space mmWave channel and sectored antennas.
MMWAVE_STYLE_BANDS = frozenset({Band.MM28, Band.EBAND, Band.SUB6, Band.MM60})


@dataclass(frozen=True)
class BaseStation:
    """A fixed node; transmitter/receiver endpoint of flows."""

    id: int
    x: float
    y: float


@dataclass(frozen=True)
class Flow:
    """A traffic demand between two base stations.

    ``qos`` is the minimum throughput (bits/s) the flow must achieve over
    one frame to count as completed.
    """

    id: int
    src: int
    dst: int
    qos: float

    def __post_init__(self):
        if self.src == self.dst:
            raise ValueError(f"flow {self.id}: src and dst must differ")
        if self.qos <= 0:
            raise ValueError(f"flow {self.id}: qos must be positive")


@dataclass(frozen=True)
class BandParams:
    """Per-band radio parameters (linear units)."""

    carrier_hz: float
    bandwidth_hz: float
    tx_power_w: float
    mui_factor: float
    interference_threshold: float
    path_loss_exponent: float

    def __post_init__(self):
        for name in ("carrier_hz", "bandwidth_hz", "tx_power_w",
                     "interference_threshold", "path_loss_exponent"):
            if getattr(self, name) <= 0:
                raise ValueError(f"BandParams.{name} must be positive")
        if self.mui_factor < 0:
            raise ValueError("BandParams.mui_factor must be non-negative")


@dataclass(frozen=True)
class FrameConfig:
    """Frame timing, noise and transceiver parameters.

    One frame is a scheduling phase of ``sched_phase_s`` followed by
    ``num_slots`` transmission slots of ``slot_s`` each.
    """

    num_slots: int
    slot_s: float
    sched_phase_s: float
    noise_psd_w_per_hz: float
    efficiency: float
    thz_ref_dist_m: float

    def __post_init__(self):
        if self.num_slots < 1:
            raise ValueError("num_slots must be >= 1")
        if not 0 < self.efficiency < 1:
            raise ValueError("efficiency must be in (0, 1)")
        for name in ("slot_s", "sched_phase_s", "noise_psd_w_per_hz",
                     "thz_ref_dist_m"):
            if getattr(self, name) <= 0:
                raise ValueError(f"FrameConfig.{name} must be positive")


def distance(a: BaseStation, b: BaseStation) -> float:
    """Planar Euclidean distance between two stations, in meters."""
    return math.hypot(a.x - b.x, a.y - b.y)


def adjacent(i: Flow, j: Flow) -> bool:
    """True if the two flows share a base station endpoint.

    Adjacent flows can never transmit concurrently (half-duplex radios),
    regardless of band.
    """
    return bool({i.src, i.dst} & {j.src, j.dst})


def frame_duration(frame: FrameConfig) -> float:
    """Total frame duration in seconds (scheduling phase + all slots)."""
    return frame.sched_phase_s + frame.num_slots * frame.slot_s


def throughput(slot_rates: np.ndarray, frame: FrameConfig) -> float:
    """Frame throughput in bits/s from a per-slot rate row.

    ``slot_rates`` must have one entry per slot (zero in idle slots); the
    delivered bits are averaged over the whole frame duration including
    the scheduling phase.
    """
    rates = np.asarray(slot_rates, dtype=float)
    if rates.shape != (frame.num_slots,):
        raise ValueError(
            f"expected {frame.num_slots} slot rates, got shape {rates.shape}")
    return float(rates.sum() * frame.slot_s / frame_duration(frame))


@dataclass
class Scenario:
    """A fully-specified simulation instance.

    The interferer gain table holds one sampled directivity-gain product
    per ordered pair of distinct flows (row = interferer, column =
    victim), drawn once at construction; mmWave-style interference uses
    these fixed draws for the whole frame.

    Treat instances as read-only after construction; they are shared
    across schemes and may be used from parallel runs.
    """

    stations: list[BaseStation]
    flows: list[Flow]
    frame: FrameConfig
    bands: dict[Band, BandParams]
    seed: int
    interferer_gain_table: np.ndarray
    sectored: "object"      # radio.SectoredAntenna
    cassegrain: "object"    # radio.CassegrainAntenna

    def __post_init__(self):
        ids = [s.id for s in self.stations]
        if len(set(ids)) != len(ids):
            raise ValueError("station ids must be unique")
        self._station_by_id = {s.id: s for s in self.stations}
        for f in self.flows:
            if f.src not in self._station_by_id or f.dst not in self._station_by_id:
                raise ValueError(f"flow {f.id} references unknown station")
        n = len(self.flows)
        table = np.asarray(self.interferer_gain_table, dtype=float)
        if table.shape != (n, n):
            raise ValueError(
                f"gain table must be {n}x{n}, got {table.shape}")
        self.interferer_gain_table = table
        # cached geometry, indexed by flow id (ids are 0..F-1 in generated
        # scenarios; hand-built ones must follow the same convention)
        if sorted(f.id for f in self.flows) != list(range(n)):
            raise ValueError("flow ids must be 0..F-1")
        self._src_pos = np.array(
            [(self._station_by_id[f.src].x, self._station_by_id[f.src].y)
             for f in self.flows], dtype=float).reshape(n, 2)
        self._dst_pos = np.array(
            [(self._station_by_id[f.dst].x, self._station_by_id[f.dst].y)
             for f in self.flows], dtype=float).reshape(n, 2)
        self._flow_dist = np.hypot(*(self._src_pos - self._dst_pos).T)

    @property
    def num_flows(self) -> int:
        return len(self.flows)

    def station(self, station_id: int) -> BaseStation:
        return self._station_by_id[station_id]

    @property
    def src_positions(self) -> np.ndarray:
        """F x 2 array of flow transmitter positions."""
        return self._src_pos

    @property
    def dst_positions(self) -> np.ndarray:
        """F x 2 array of flow receiver positions."""
        return self._dst_pos

    def flow_distance(self, flow_id: int) -> float:
        """Transmitter-to-receiver distance of a flow, in meters."""
        return float(self._flow_dist[flow_id])

    def cross_distance(self, interferer_id: int, victim_id: int) -> float:
        """Distance from an interferer's transmitter to a victim's receiver."""
        d = self._src_pos[interferer_id] - self._dst_pos[victim_id]
        return float(math.hypot(d[0], d[1]))


@dataclass
class ScheduleMatrix:
    """Per-flow, per-slot activation grid.

    ``entries[i, t]`` is 0 when flow ``i`` idles in slot ``t`` and the
    band code (see ``BAND_CODE``) when it transmits.  ``per_flow_band``
    records the single band each assigned flow uses for the whole frame;
    flows absent from it were dropped and must have all-idle rows.
    """

    entries: np.ndarray
    per_flow_band: dict[int, Band]

    @property
    def num_flows(self) -> int:
        return self.entries.shape[0]

    @property
    def num_slots(self) -> int:
        return self.entries.shape[1]

    def active_mask(self) -> np.ndarray:
        """Boolean F x M mask of transmitting cells."""
        return self.entries != IDLE

    def active_slots(self, flow_id: int) -> np.ndarray:
        """1-indexed slots in which the flow transmits."""
        return np.flatnonzero(self.entries[flow_id] != IDLE) + 1


@dataclass(frozen=True)
class FlowOutcome:
    """Result of one frame for one flow."""

    flow_id: int
    achieved_throughput: float
    completed: bool
    completion_slot: Optional[int] = None
