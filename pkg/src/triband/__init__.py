"""Deterministic scheduling simulator for triple-band wireless backhaul.

Assigns each traffic flow a transmission band (28 GHz, E-band or THz) and
a per-slot schedule that maximizes the number of flows meeting their
minimum-throughput requirement, plus baselines, an exhaustive tiny-scale
optimum, and a reproducible experiment harness.
"""

from .band_select import BandAssignment, max_band_throughput, select_bands
from .baselines import (SchemeKind, dual_band_schedule, mqis_schedule,
                        run_scheme, single_band_schedule,
                        triple_band_schedule)
from .conflict import ConflictGraph, conflicts, degrees, relative_interference
from .experiments import (ExperimentConfig, RunRecord, SweepSpec,
                          generate_scenario, mean_delay, run_sweep,
                          system_throughput, write_csv)
from .model import (Band, BandParams, BaseStation, Flow, FlowOutcome,
                    FrameConfig, Scenario, ScheduleMatrix, adjacent,
                    distance, frame_duration, throughput)
from .oracle import TinyInstance, optimal_completed
from .radio import CassegrainAntenna, SectoredAntenna, cassegrain_gain
from .scheduler import priority, schedule
from .validate import validate_schedule

__version__ = "0.1.0"

__all__ = [
    "Band", "BandAssignment", "BandParams", "BaseStation",
    "CassegrainAntenna", "ConflictGraph", "ExperimentConfig", "Flow",
    "FlowOutcome", "FrameConfig", "RunRecord", "Scenario", "ScheduleMatrix",
    "SchemeKind", "SectoredAntenna", "SweepSpec", "TinyInstance", "adjacent",
    "cassegrain_gain", "conflicts", "degrees", "distance", "dual_band_schedule",
    "frame_duration", "generate_scenario", "max_band_throughput", "mean_delay",
    "mqis_schedule", "optimal_completed", "priority", "relative_interference",
    "run_scheme", "run_sweep", "schedule", "select_bands",
    "single_band_schedule", "system_throughput", "throughput",
    "triple_band_schedule", "validate_schedule", "write_csv",
]
