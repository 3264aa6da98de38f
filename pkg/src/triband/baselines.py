"""The comparison schemes: single-band (E-band only), dual-band
(2.4 GHz + 60 GHz) and sequential independent-set scheduling.

All schemes share the scenario, the radio model and the slot engine's
input/output types, so their outputs can be validated and scored by the
same machinery as the main triple-band scheme.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .band_select import comparison_param, max_band_throughput, select_bands
from .conflict import ConflictGraph
from .model import (BAND_CODE, Band, FlowOutcome, Scenario, ScheduleMatrix,
                    frame_duration)
from .scheduler import concurrent_slot_rates, priority, schedule


class SchemeKind(Enum):
    TRIPLE_BAND = "triple"
    SINGLE_BAND_EBAND = "single"
    DUAL_BAND = "dual"
    MQIS = "mqis"

    @classmethod
    def from_name(cls, name: str) -> "SchemeKind":
        for kind in cls:
            if kind.value == name:
                return kind
        raise ValueError(f"unknown scheme {name!r}; expected one of "
                         f"{[k.value for k in cls]}")


def triple_band_schedule(scenario: Scenario):
    """The main scheme: band selection followed by greedy slot scheduling."""
    assignment = select_bands(scenario)
    return schedule(scenario, assignment.per_flow_band())


def single_band_schedule(scenario: Scenario):
    """Every flow is forced onto the E-band; flows whose demand exceeds the
    E-band ceiling are dropped.  No distance gate applies."""
    per_flow_band = {
        f.id: Band.EBAND for f in scenario.flows
        if f.qos <= max_band_throughput(scenario, f.id, Band.EBAND)}
    return schedule(scenario, per_flow_band)


#: Dual-band scheme bands, lowest first (the tie-break preference).
DUAL_BANDS = (Band.SUB6, Band.MM60)


def select_bands_dual(scenario: Scenario) -> dict[int, Band]:
    """Ceiling-only band selection for the dual-band scheme.

    Neither band has a distance gate; a flow eligible for both goes to
    the band whose already-placed conflicting flows demand less slot
    time, preferring the lower band on ties.  Flows exceeding both
    ceilings are dropped.
    """
    members: dict[Band, list[int]] = {b: [] for b in DUAL_BANDS}
    out: dict[int, Band] = {}
    mq = {b: [max_band_throughput(scenario, f.id, b) for f in scenario.flows]
          for b in DUAL_BANDS}
    for f in scenario.flows:
        eligible = [b for b in DUAL_BANDS if f.qos <= mq[b][f.id]]
        if not eligible:
            continue
        if len(eligible) == 1:
            chosen = eligible[0]
        else:
            costs = [comparison_param(scenario, f.id, b, members[b])
                     for b in eligible]
            chosen = eligible[int(np.argmin(costs))]
        members[chosen].append(f.id)
        out[f.id] = chosen
    return out


def dual_band_schedule(scenario: Scenario):
    """The dual-band scheme: ceiling-only selection, same slot engine."""
    return schedule(scenario, select_bands_dual(scenario))


def build_independent_sets(scenario: Scenario, per_flow_band: dict[int, Band],
                           graph: ConflictGraph) -> list[list[int]]:
    """Greedy conflict-free sets in QoS-priority order.

    Each set is seeded with the highest-priority unassigned flow; the
    remaining unassigned flows join in priority order whenever they
    conflict with no member so far.
    """
    prio = {i: priority(scenario, i, band)
            for i, band in per_flow_band.items()}
    remaining = sorted(per_flow_band, key=lambda i: (-prio[i], i))
    sets: list[list[int]] = []
    while remaining:
        members = [remaining[0]]
        blocked = graph.conflict[remaining[0]].copy()
        for i in remaining[1:]:
            if not blocked[i]:
                members.append(i)
                blocked |= graph.conflict[i]
        chosen = set(members)
        remaining = [i for i in remaining if i not in chosen]
        sets.append(members)
    return sets


def mqis_schedule(scenario: Scenario):
    """Sequential independent-set scheduling over the triple-band assignment.

    All flows of a set start in the same slot and the next set waits
    until every flow of the current one has completed (or the frame
    ends), even if capacity goes idle meanwhile.
    """
    assignment = select_bands(scenario)
    per_flow_band = assignment.per_flow_band()
    graph = ConflictGraph.build(scenario, per_flow_band)
    sets = build_independent_sets(scenario, per_flow_band, graph)

    frame = scenario.frame
    n, m = scenario.num_flows, frame.num_slots
    duration = frame_duration(frame)
    dt = frame.slot_s

    entries = np.zeros((n, m), dtype=np.int8)
    residual = np.zeros(n)
    for i in per_flow_band:
        residual[i] = scenario.flows[i].qos * duration
    completion: dict[int, int] = {}
    started: dict[int, int] = {}

    t = 1
    for members in sets:
        if t > m:
            break
        active = list(members)
        for j in active:
            started[j] = t
        rate_dt = concurrent_slot_rates(graph, frame, active) * dt
        while active and t <= m:
            idx = np.array(active)
            residual[idx] -= rate_dt
            if np.any(residual[idx] <= 0):
                survivors = []
                for j in active:
                    if residual[j] <= 0:
                        completion[j] = t
                        entries[j, started[j] - 1:t] = BAND_CODE[per_flow_band[j]]
                    else:
                        survivors.append(j)
                active = survivors
                if active:
                    rate_dt = concurrent_slot_rates(graph, frame, active) * dt
            t += 1
        for j in active:  # frame ended mid-set; later sets never start
            entries[j, started[j] - 1:m] = BAND_CODE[per_flow_band[j]]

    outcomes = []
    for f in scenario.flows:
        if f.id in per_flow_band:
            delivered = f.qos * duration - residual[f.id]
            outcomes.append(FlowOutcome(
                f.id, delivered / duration, f.id in completion,
                completion.get(f.id)))
        else:
            outcomes.append(FlowOutcome(f.id, 0.0, False))
    matrix = ScheduleMatrix(entries=entries, per_flow_band=per_flow_band)
    return matrix, outcomes


SCHEME_RUNNERS = {
    SchemeKind.TRIPLE_BAND: triple_band_schedule,
    SchemeKind.SINGLE_BAND_EBAND: single_band_schedule,
    SchemeKind.DUAL_BAND: dual_band_schedule,
    SchemeKind.MQIS: mqis_schedule,
}


def run_scheme(scenario: Scenario, scheme: SchemeKind | str):
    """Run one scheme on a scenario; returns (matrix, outcomes)."""
    kind = SchemeKind.from_name(scheme) if isinstance(scheme, str) else scheme
    return SCHEME_RUNNERS[kind](scenario)
