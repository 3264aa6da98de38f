"""Transmission band selection.

Each flow is routed to the 28 GHz band, the E-band, or the THz band based
on its link distance, its QoS demand against each band's interference-free
throughput ceiling, and how much slot time conflicting flows already
placed in a band would demand.  Flows whose demand cannot be met by any
band reachable at their distance are dropped before scheduling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import radio
from .model import Band, Scenario, adjacent, frame_duration

#: The three bands the selector arbitrates between, in tie-break order
#: (lower band preferred, reserving THz capacity for flows that need it).
TRIPLE_BANDS = (Band.MM28, Band.EBAND, Band.THZ)


@dataclass
class BandAssignment:
    """Disjoint per-band flow sets produced by the selector."""

    s_mm: list[int] = field(default_factory=list)
    s_me: list[int] = field(default_factory=list)
    s_thz: list[int] = field(default_factory=list)
    dropped: list[int] = field(default_factory=list)

    def per_flow_band(self) -> dict[int, Band]:
        out = {i: Band.MM28 for i in self.s_mm}
        out.update({i: Band.EBAND for i in self.s_me})
        out.update({i: Band.THZ for i in self.s_thz})
        return out

    def all_ids(self) -> set[int]:
        return set(self.s_mm) | set(self.s_me) | set(self.s_thz) | set(self.dropped)


def max_band_throughput(scenario: Scenario, flow_id: int,
                        band_tag: Band) -> float:
    """Interference-free throughput ceiling of a flow in a band (bits/s).

    The ceiling assumes the flow transmits alone in every slot of the
    frame at the full band bandwidth.
    """
    rate = radio.interference_free_rate(scenario, flow_id, band_tag)
    frame = scenario.frame
    return (frame.num_slots * frame.slot_s * rate) / frame_duration(frame)


def comparison_param(scenario: Scenario, flow_id: int, band_tag: Band,
                     members: Iterable[int]) -> float:
    """Slot-time load a flow would contend with in a band.

    Sums demand/rate over the flows already placed in the band that share
    a base station with ``flow_id``; rates are interference-free.
    """
    me = scenario.flows[flow_id]
    total = 0.0
    for other in members:
        if adjacent(me, scenario.flows[other]):
            total += (scenario.flows[other].qos
                      / radio.interference_free_rate(scenario, other, band_tag))
    return total


def select_bands(scenario: Scenario) -> BandAssignment:
    """Partition the scenario's flows into per-band sets.

    Flows are visited in ascending id order; every placement updates the
    sets that later flows' load comparisons see, so the result is
    deterministic for a given scenario.
    """
    frame = scenario.frame
    n = scenario.num_flows
    assignment = BandAssignment()
    if n == 0:
        return assignment

    rate_free = np.array([
        [radio.interference_free_rate(scenario, i, b) for b in TRIPLE_BANDS]
        for i in range(n)])
    factor = frame.num_slots * frame.slot_s / frame_duration(frame)
    mq = rate_free * factor
    qos = np.array([f.qos for f in scenario.flows])
    dist = np.array([scenario.flow_distance(i) for i in range(n)])
    # per-flow slot-time load if placed in each band, used by the
    # comparison parameter of later flows
    load = qos[:, None] / rate_free

    src = np.array([f.src for f in scenario.flows])
    dst = np.array([f.dst for f in scenario.flows])
    adj = ((src[:, None] == src[None, :]) | (src[:, None] == dst[None, :])
           | (dst[:, None] == src[None, :]) | (dst[:, None] == dst[None, :]))
    np.fill_diagonal(adj, False)

    mm_i, me_i, thz_i = 0, 1, 2
    member_mask = np.zeros((n, 3), dtype=bool)  # [flow, band]
    sets = {mm_i: assignment.s_mm, me_i: assignment.s_me,
            thz_i: assignment.s_thz}

    def c_param(i: int, band_idx: int) -> float:
        mask = member_mask[:, band_idx] & adj[i]
        return float(load[mask, band_idx].sum())

    def place(i: int, band_idx: int) -> None:
        sets[band_idx].append(i)
        member_mask[i, band_idx] = True

    far = dist > frame.thz_ref_dist_m
    drop = (far & (qos > mq[:, me_i])) | (qos > mq[:, thz_i])

    for i in range(n):
        if drop[i]:
            assignment.dropped.append(i)
            continue
        if far[i]:
            if qos[i] > mq[i, mm_i]:
                place(i, me_i)
            elif c_param(i, me_i) > c_param(i, mm_i):
                place(i, mm_i)
            else:
                place(i, me_i)
        else:
            if qos[i] > mq[i, me_i]:
                place(i, thz_i)
            elif qos[i] > mq[i, mm_i]:
                if c_param(i, me_i) >= c_param(i, thz_i):
                    place(i, thz_i)
                else:
                    place(i, me_i)
            else:
                costs = [c_param(i, b) for b in (mm_i, me_i, thz_i)]
                place(i, int(np.argmin(costs)))  # ties to the lower band

    return assignment
