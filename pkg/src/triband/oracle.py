"""Exhaustive optimal scheduler for tiny instances.

Enumerates every way to fix a band (or none) per flow and every feasible
activation grid, and returns the maximum number of flows that meet their
demand.  Ground truth for checking the heuristic: any heuristic schedule
lies inside this search space, so its completed count can never exceed
the optimum returned here.

Slots are interchangeable (a slot's rates depend only on that slot's
concurrent set), so grids are enumerated as multisets of feasible
concurrent sets over the frame; this is exactly the grid search, minus
slot permutations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import radio
from .conflict import ConflictGraph
from .model import BAND_CODE, Band, Scenario, ScheduleMatrix, frame_duration

MAX_FLOWS = 3
MAX_SLOTS = 4

#: Band choices per flow: None means the flow never transmits.
BAND_CHOICES = (None, Band.MM28, Band.EBAND, Band.THZ)


@dataclass(frozen=True)
class TinyInstance:
    """A scenario small enough to solve exhaustively."""

    scenario: Scenario

    def __post_init__(self):
        if self.scenario.num_flows > MAX_FLOWS:
            raise ValueError(
                f"instance too large: {self.scenario.num_flows} flows "
                f"(max {MAX_FLOWS})")
        if self.scenario.frame.num_slots > MAX_SLOTS:
            raise ValueError(
                f"instance too large: {self.scenario.frame.num_slots} slots "
                f"(max {MAX_SLOTS})")


def optimal_completed(instance: TinyInstance) -> tuple[int, ScheduleMatrix]:
    """Maximum achievable number of completed flows, with one optimal matrix."""
    scenario = instance.scenario
    n = scenario.num_flows
    m = scenario.frame.num_slots
    dt = scenario.frame.slot_s
    duration = frame_duration(scenario.frame)
    demand = np.array([f.qos for f in scenario.flows]) * duration
    # tolerance absorbs float dust when k * rate * dt sits exactly on a
    # demand met by incremental accounting elsewhere
    demand_tol = demand * (1.0 - 1e-12)

    tables = _PairTables.build(scenario)

    best_count = -1
    best_grid = None
    for bands in itertools.product(BAND_CHOICES, repeat=n):
        subsets = _feasible_subsets(tables, bands)
        rates = np.array([_subset_rates(scenario, tables, bands, subset)
                          for subset in subsets])
        combos, counts = _multisets(len(subsets), m)
        delivered = counts @ rates * dt          # (n_combos, F)
        completed = (delivered >= demand_tol).sum(axis=1)
        j = int(np.argmax(completed))
        if int(completed[j]) > best_count:
            best_count = int(completed[j])
            best_grid = (bands, combos[j], subsets)
            if best_count == n:
                break
    return best_count, _matrix(n, m, *best_grid)


@dataclass
class _PairTables:
    """Per-band pairwise quantities shared across the enumeration."""

    adjacency: np.ndarray                    # bool [F, F]
    rx_power: dict[Band, np.ndarray]         # [F]
    interference: dict[Band, np.ndarray]     # [F, F] watts
    conflict: dict[Band, np.ndarray]         # bool [F, F] same-band verdicts

    @classmethod
    def build(cls, scenario: Scenario) -> "_PairTables":
        rx_power, interference, conflict = {}, {}, {}
        adjacency = None
        real_bands = [b for b in BAND_CHOICES if b is not None]
        for band in real_bands:
            graph = ConflictGraph.build(
                scenario, {f.id: band for f in scenario.flows})
            adjacency = graph.adjacency
            rx_power[band] = graph.rx_power.copy()
            interference[band] = graph.interference.copy()
            conflict[band] = graph.conflict.copy()
        return cls(adjacency, rx_power, interference, conflict)


def _feasible_subsets(tables: _PairTables,
                      bands: tuple[Band | None, ...]) -> list[tuple[int, ...]]:
    """Concurrent sets allowed under the pairwise constraints.

    Includes the empty set (an idle slot).  Adjacency forbids any shared
    station across bands; the interference thresholds apply within a
    band, in both directions (already folded into ``tables.conflict``).
    """
    eligible = [i for i, b in enumerate(bands) if b is not None]
    out = []
    for k in range(len(eligible) + 1):
        for subset in itertools.combinations(eligible, k):
            ok = True
            for a, b in itertools.combinations(subset, 2):
                if tables.adjacency[a, b]:
                    ok = False
                    break
                if bands[a] is bands[b] and tables.conflict[bands[a]][a, b]:
                    ok = False
                    break
            if ok:
                out.append(subset)
    return out


def _subset_rates(scenario: Scenario, tables: _PairTables, bands,
                  subset) -> np.ndarray:
    """Per-flow rates (length F) when exactly ``subset`` transmits."""
    frame = scenario.frame
    rates = np.zeros(scenario.num_flows)
    for i in subset:
        band = scenario.bands[bands[i]]
        total_i = sum(
            tables.interference[bands[i]][j, i]
            for j in subset if j != i and bands[j] is bands[i])
        rates[i] = radio.shannon_rate(
            tables.rx_power[bands[i]][i], total_i, band, frame)
    return rates


_MULTISET_CACHE: dict[tuple[int, int], tuple[list, np.ndarray]] = {}


def _multisets(num_subsets: int, num_slots: int):
    """All multisets of subset indices over the frame, plus count matrix."""
    key = (num_subsets, num_slots)
    if key not in _MULTISET_CACHE:
        combos = list(itertools.combinations_with_replacement(
            range(num_subsets), num_slots))
        counts = np.zeros((len(combos), num_subsets))
        for row, combo in enumerate(combos):
            for idx in combo:
                counts[row, idx] += 1
        _MULTISET_CACHE[key] = (combos, counts)
    return _MULTISET_CACHE[key]


def _matrix(n: int, m: int, bands, combo, subsets) -> ScheduleMatrix:
    entries = np.zeros((n, m), dtype=np.int8)
    for t, subset_idx in enumerate(combo):
        for i in subsets[subset_idx]:
            entries[i, t] = BAND_CODE[bands[i]]
    per_flow_band = {i: b for i, b in enumerate(bands) if b is not None}
    return ScheduleMatrix(entries=entries, per_flow_band=per_flow_band)
