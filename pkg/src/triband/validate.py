"""Standalone feasibility validator for schedule matrices.

Checks, for every slot, that no two active flows share a base station,
that same-band active pairs keep their relative interference below the
band threshold in both directions, and that every flow sticks to its one
assigned band.  Optionally also checks that each flow's active slots form
one contiguous run (a structural property of the greedy schedulers, not
of the underlying integer program).
"""

from __future__ import annotations

import numpy as np

from .conflict import ConflictGraph
from .model import BAND_CODE, Scenario, ScheduleMatrix, frame_duration


def validate_schedule(matrix: ScheduleMatrix, scenario: Scenario,
                      require_contiguous: bool = False,
                      graph: ConflictGraph | None = None) -> list[str]:
    """Return a list of violation descriptions; empty means feasible."""
    violations: list[str] = []
    entries = matrix.entries
    n, m = entries.shape
    if n != scenario.num_flows:
        return [f"matrix has {n} rows for {scenario.num_flows} flows"]

    # band consistency: active cells match the assigned band, dropped
    # flows stay idle
    for i in range(n):
        row = entries[i]
        active = row[row != 0]
        band = matrix.per_flow_band.get(i)
        if band is None:
            if active.size:
                violations.append(f"flow {i}: active but has no band")
            continue
        code = BAND_CODE[band]
        if np.any(active != code):
            violations.append(f"flow {i}: cells deviate from its band {band}")

    if require_contiguous:
        for i in range(n):
            on = np.flatnonzero(entries[i] != 0)
            if on.size and (on[-1] - on[0] + 1 != on.size):
                violations.append(f"flow {i}: active slots not contiguous")

    if graph is None:
        graph = ConflictGraph.build(scenario, matrix.per_flow_band)

    active_mask = entries != 0
    slots_with_pair = np.flatnonzero(active_mask.sum(axis=0) >= 2)
    for t in slots_with_pair:
        ids = np.flatnonzero(active_mask[:, t])
        bad = np.argwhere(np.triu(graph.conflict[np.ix_(ids, ids)], k=1))
        for a, b in bad:
            i, j = int(ids[a]), int(ids[b])
            if graph.adjacency[i, j]:
                reason = "share a base station"
            else:
                sigma = scenario.bands[
                    matrix.per_flow_band[i]].interference_threshold
                reason = (f"relative interference exceeds {sigma:g}")
            violations.append(
                f"slot {t + 1}: flows {i} and {j} both active but {reason}")
    return violations


def recompute_outcome_bits(matrix: ScheduleMatrix, scenario: Scenario,
                           graph: ConflictGraph | None = None) -> np.ndarray:
    """Delivered bits per flow, recomputed slot by slot from the matrix.

    Independent accounting path used to cross-check scheduler outcomes:
    rates are rebuilt from each slot's actual concurrent membership.
    """
    from .scheduler import concurrent_slot_rates

    if graph is None:
        graph = ConflictGraph.build(scenario, matrix.per_flow_band)
    entries = matrix.entries
    n, m = entries.shape
    delivered = np.zeros(n)
    dt = scenario.frame.slot_s
    prev: tuple[int, ...] | None = None
    rates = None
    for t in range(m):
        ids = tuple(np.flatnonzero(entries[:, t]))
        if not ids:
            prev = None
            continue
        if ids != prev:
            rates = concurrent_slot_rates(graph, scenario.frame, list(ids))
            prev = ids
        delivered[list(ids)] += rates * dt
    return delivered
