"""Per-slot greedy scheduling of band-assigned flows.

Flows are considered in a fixed order (fewest shared-BS neighbors first,
then highest priority, then lowest id) and admitted into the transmitting
set whenever they conflict with none of its members.  Admitted flows
transmit every subsequent slot until their residual demand is exhausted;
rates are recomputed against the slot's final same-band membership, so
all concurrent flows see the same interferer set.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from . import radio
from .conflict import ConflictGraph
from .model import (BAND_CODE, Band, FlowOutcome, Scenario, ScheduleMatrix,
                    frame_duration)


class FlowStatus(Enum):
    WAITING = "waiting"
    TRANSMITTING = "transmitting"
    COMPLETED = "completed"
    UNSERVED = "unserved"


@dataclass
class FlowState:
    """Bookkeeping for one assigned flow during a frame."""

    flow_id: int
    band: Band
    residual_bits: float
    degree: int
    priority: float
    status: FlowStatus = FlowStatus.WAITING
    start_slot: Optional[int] = None
    completion_slot: Optional[int] = None


def priority(scenario: Scenario, flow_id: int, band_tag: Band) -> float:
    """Scheduling priority: inverse of the slot count the flow would need
    transmitting alone in its band."""
    rate = radio.interference_free_rate(scenario, flow_id, band_tag)
    frame = scenario.frame
    demand_bits = scenario.flows[flow_id].qos * frame_duration(frame)
    return rate * frame.slot_s / demand_bits


def schedule(scenario: Scenario, per_flow_band: dict[int, Band],
             graph: ConflictGraph | None = None,
             ) -> tuple[ScheduleMatrix, list[FlowOutcome]]:
    """Run the greedy slot scheduler for one frame.

    ``per_flow_band`` maps each non-dropped flow id to its band; dropped
    flows simply get all-idle rows and zero throughput.  Returns the
    activation matrix and one outcome per scenario flow, in id order.
    """
    if graph is None:
        graph = ConflictGraph.build(scenario, per_flow_band)
    frame = scenario.frame
    n, m = scenario.num_flows, frame.num_slots
    duration = frame_duration(frame)
    dt = frame.slot_s

    states = {
        i: FlowState(
            flow_id=i, band=band,
            residual_bits=scenario.flows[i].qos * duration,
            degree=graph.degree[i],
            priority=priority(scenario, i, band))
        for i, band in per_flow_band.items()
    }
    order = sorted(states, key=lambda i: (states[i].degree,
                                          -states[i].priority, i))

    entries = np.zeros((n, m), dtype=np.int8)
    residual = np.zeros(n)
    for i, st in states.items():
        residual[i] = st.residual_bits
    rate_dt = np.zeros(n)  # bits delivered per slot at current membership

    sch: list[int] = []
    blocked = np.zeros(n, dtype=bool)
    waiting = list(order)
    membership_changed = True

    t = 1
    while t <= m:
        if membership_changed:
            if waiting:
                still = []
                for i in waiting:
                    if blocked[i]:
                        still.append(i)
                    else:
                        sch.append(i)
                        blocked |= graph.conflict[i]
                        states[i].status = FlowStatus.TRANSMITTING
                        states[i].start_slot = t
                waiting = still
            if not sch:
                assert not waiting
                break  # nothing left to transmit
            rate_dt[sch] = concurrent_slot_rates(graph, frame, sch) * dt
            sch_arr = np.array(sch)
            membership_changed = False

        residual[sch_arr] -= rate_dt[sch_arr]
        if np.any(residual[sch_arr] <= 0):
            done = [j for j in sch if residual[j] <= 0]
            for j in done:
                st = states[j]
                st.status = FlowStatus.COMPLETED
                st.completion_slot = t
                entries[j, st.start_slot - 1:t] = BAND_CODE[st.band]
                sch.remove(j)
            blocked = (graph.conflict[sch].any(axis=0) if sch
                       else np.zeros(n, dtype=bool))
            membership_changed = True
        t += 1

    for j in sch:  # frame ended mid-transmission
        st = states[j]
        st.status = FlowStatus.UNSERVED
        entries[j, st.start_slot - 1:m] = BAND_CODE[st.band]

    matrix = ScheduleMatrix(entries=entries, per_flow_band=dict(per_flow_band))
    outcomes = _outcomes(scenario, states, residual, duration)
    return matrix, outcomes


def concurrent_slot_rates(graph: ConflictGraph, frame,
                          members: list[int]) -> np.ndarray:
    """Rates (bits/s) of a transmitting set, in ``members`` order.

    Each member's interference is summed over the same-band members; the
    set is conflict-free, so every included pair is below threshold.
    """
    idx = np.array(members)
    rates = np.zeros(len(members))
    bands = {graph.per_flow_band[j] for j in members}
    for band in bands:
        sel = np.array([k for k, j in enumerate(members)
                        if graph.per_flow_band[j] is band])
        b_idx = idx[sel]
        i_sum = graph.interference[np.ix_(b_idx, b_idx)].sum(axis=0)
        sinr = graph.rx_power[b_idx] / (graph.noise_w[b_idx] + i_sum)
        rates[sel] = (frame.efficiency * graph.bandwidth_hz[b_idx]
                      * np.log2(1.0 + sinr))
    return rates


def _outcomes(scenario: Scenario, states: dict[int, FlowState],
              residual: np.ndarray, duration: float) -> list[FlowOutcome]:
    outcomes = []
    for f in scenario.flows:
        st = states.get(f.id)
        if st is None:
            outcomes.append(FlowOutcome(f.id, 0.0, False))
            continue
        delivered = f.qos * duration - residual[f.id]
        outcomes.append(FlowOutcome(
            flow_id=f.id,
            achieved_throughput=delivered / duration,
            completed=st.status is FlowStatus.COMPLETED,
            completion_slot=st.completion_slot))
    return outcomes
