"""Scenario generation, metrics, parameter sweeps and CSV output.

A single seeded generator drives each scenario with a frozen draw order
(station positions, then flow endpoints, then QoS demands, then the
interferer gain table), so identical configs reproduce byte-identical
results anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, TextIO

import numpy as np

from . import radio
from .baselines import run_scheme
from .model import (Band, BandParams, BaseStation, Flow, FlowOutcome,
                    FrameConfig, Scenario, ScheduleMatrix, frame_duration)
from .radio import CassegrainAntenna, SectoredAntenna
from .validate import validate_schedule

#: Default radio parameters per band: (carrier Hz, bandwidth Hz, tx power W).
BAND_DEFAULTS = {
    Band.MM28: (28e9, 800e6, 1.0),
    Band.EBAND: (73e9, 1.2e9, 1.0),
    Band.THZ: (340e9, 10e9, 20e-3),
    Band.SUB6: (2.4e9, 20e6, 1.0),
    Band.MM60: (60e9, 2.16e9, 1.0),
}

MUI_FACTOR = 1.0
PATH_LOSS_EXPONENT = 2.0
EFFICIENCY = 0.5
NOISE_DBM_PER_MHZ = -134.0
SECTORED_G_MAX_DB = 20.0
SECTORED_G_MIN_DB = 0.0
SECTORED_BEAMWIDTH_RAD = math.pi / 6


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything a run needs; field names match the config-file keys."""

    area_m: float = 100.0
    num_stations: int = 20
    num_flows: int = 350
    num_slots: int = 2000
    slot_us: float = 18.0
    sched_phase_us: float = 850.0
    qos_min_bps: float = 1e6
    qos_max_bps: float = 1e10
    thz_ref_dist_m: float = 50.0
    sigma_mm: float = 1e-4
    sigma_me: float = 1e-4
    sigma_thz: float = 1e-2
    seeds: tuple[int, ...] = (1,)
    schemes: tuple[str, ...] = ("triple", "single", "dual", "mqis")
    #: (carrier Hz, bandwidth Hz, tx power W) overrides per band.
    band_overrides: dict = field(default_factory=dict)

    def band_params(self) -> dict[Band, BandParams]:
        sigmas = {
            Band.MM28: self.sigma_mm,
            Band.EBAND: self.sigma_me,
            Band.THZ: self.sigma_thz,
            # the dual-band scheme mirrors the mmWave threshold
            Band.SUB6: self.sigma_mm,
            Band.MM60: self.sigma_mm,
        }
        out = {}
        for band, defaults in BAND_DEFAULTS.items():
            carrier, width, power = self.band_overrides.get(band, defaults)
            out[band] = BandParams(
                carrier_hz=carrier, bandwidth_hz=width, tx_power_w=power,
                mui_factor=MUI_FACTOR,
                interference_threshold=sigmas[band],
                path_loss_exponent=PATH_LOSS_EXPONENT)
        return out

    def frame(self) -> FrameConfig:
        return FrameConfig(
            num_slots=self.num_slots,
            slot_s=self.slot_us * 1e-6,
            sched_phase_s=self.sched_phase_us * 1e-6,
            noise_psd_w_per_hz=radio.noise_psd_from_dbm_per_mhz(
                NOISE_DBM_PER_MHZ),
            efficiency=EFFICIENCY,
            thz_ref_dist_m=self.thz_ref_dist_m)


def default_sectored_antenna() -> SectoredAntenna:
    return SectoredAntenna.from_db(SECTORED_G_MAX_DB, SECTORED_G_MIN_DB,
                                   SECTORED_BEAMWIDTH_RAD)


def sample_gain_table(rng: np.random.Generator, antenna: SectoredAntenna,
                      num_flows: int) -> np.ndarray:
    """Interferer gain products for every ordered pair of distinct flows.

    One uniform per off-diagonal cell, consumed in row-major order; the
    categorical draw matches ``radio.sample_interferer_gain`` exactly.
    """
    products, probs = radio.interferer_gain_outcomes(antenna, antenna)
    cum = np.cumsum(probs)
    n = num_flows
    table = np.zeros((n, n))
    if n > 1:
        u = rng.random(n * (n - 1))
        idx = np.minimum(np.searchsorted(cum, u, side="right"), 3)
        mask = ~np.eye(n, dtype=bool)
        table[mask] = products[idx]
    return table


def generate_scenario(cfg: ExperimentConfig, seed: int) -> Scenario:
    """Build a random scenario, fully determined by the config and seed.

    Draw order: station coordinates, flow sources, flow destination
    offsets, QoS demands, interferer gain table.
    """
    rng = np.random.default_rng(seed)
    pos = rng.uniform(0.0, cfg.area_m, size=(cfg.num_stations, 2))
    stations = [BaseStation(i, float(x), float(y))
                for i, (x, y) in enumerate(pos)]

    n = cfg.num_stations
    src = rng.integers(0, n, size=cfg.num_flows)
    offset = rng.integers(0, n - 1, size=cfg.num_flows)
    dst = offset + (offset >= src)  # uniform over stations != src
    qos = rng.uniform(cfg.qos_min_bps, cfg.qos_max_bps, size=cfg.num_flows)
    flows = [Flow(i, int(src[i]), int(dst[i]), float(qos[i]))
             for i in range(cfg.num_flows)]

    sectored = default_sectored_antenna()
    table = sample_gain_table(rng, sectored, cfg.num_flows)
    return Scenario(
        stations=stations, flows=flows, frame=cfg.frame(),
        bands=cfg.band_params(), seed=seed, interferer_gain_table=table,
        sectored=sectored, cassegrain=CassegrainAntenna())


def random_tiny_instance(seed: int):
    """A random oracle-sized instance (3 flows, 4 slots).

    Arenas are small enough that most flows can reach the THz band, and
    demands are drawn relative to each flow's E-band throughput ceiling:
    mostly light (completable in a slot or two anywhere) with occasional
    heavy flows that only fit in the THz band and force serialization
    tradeoffs.  The geometry and gain table follow the usual draw order.
    """
    from .band_select import max_band_throughput
    from .oracle import TinyInstance

    rng = np.random.default_rng(seed)
    cfg = ExperimentConfig(area_m=float(rng.uniform(25.0, 50.0)),
                           num_stations=int(rng.integers(3, 7)),
                           num_flows=3, num_slots=4)
    pos = rng.uniform(0.0, cfg.area_m, size=(cfg.num_stations, 2))
    stations = [BaseStation(i, float(x), float(y))
                for i, (x, y) in enumerate(pos)]
    n = cfg.num_stations
    src = rng.integers(0, n, size=cfg.num_flows)
    offset = rng.integers(0, n - 1, size=cfg.num_flows)
    dst = offset + (offset >= src)
    heavy = rng.random(cfg.num_flows) < 0.3
    demand_frac = np.where(heavy,
                           rng.uniform(2.0, 8.0, size=cfg.num_flows),
                           rng.uniform(0.08, 0.3, size=cfg.num_flows))
    sectored = default_sectored_antenna()
    table = sample_gain_table(rng, sectored, cfg.num_flows)

    def build(qos):
        flows = [Flow(i, int(src[i]), int(dst[i]), float(qos[i]))
                 for i in range(cfg.num_flows)]
        return Scenario(
            stations=stations, flows=flows, frame=cfg.frame(),
            bands=cfg.band_params(), seed=seed, interferer_gain_table=table,
            sectored=sectored, cassegrain=CassegrainAntenna())

    probe = build(np.ones(cfg.num_flows))  # rates are demand-independent
    ceilings = np.array([max_band_throughput(probe, i, Band.EBAND)
                         for i in range(cfg.num_flows)])
    return TinyInstance(build(demand_frac * ceilings))


# ---------------------------------------------------------------------------
# Metrics
# ---------------------------------------------------------------------------

def system_throughput(outcomes: Iterable[FlowOutcome]) -> float:
    """Sum of per-flow frame throughputs, incomplete flows included."""
    return float(sum(o.achieved_throughput for o in outcomes))


def mean_delay(outcomes: Iterable[FlowOutcome],
               frame: FrameConfig) -> Optional[float]:
    """Mean time-to-completion over completed flows, or None if none
    completed.  A flow finishing in slot t waited the scheduling phase
    plus t slots."""
    delays = [frame.sched_phase_s + o.completion_slot * frame.slot_s
              for o in outcomes if o.completed]
    if not delays:
        return None
    return float(sum(delays) / len(delays))


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

#: Default value lists for the sweepable parameters.
SWEEP_AXES = {
    "flows": tuple(range(50, 351, 50)),
    "slots": tuple(range(500, 4501, 500)),
    "dref": (30.0, 40.0, 50.0),
    "threshold": tuple(10.0 ** -k for k in range(7)),
}


def apply_sweep_value(cfg: ExperimentConfig, param: str,
                      value: float) -> ExperimentConfig:
    """A copy of the config with one swept parameter applied.

    The threshold axis sets the THz threshold and keeps the mmWave
    thresholds two orders of magnitude below it.
    """
    if param == "flows":
        return replace(cfg, num_flows=int(value))
    if param == "slots":
        return replace(cfg, num_slots=int(value))
    if param == "dref":
        return replace(cfg, thz_ref_dist_m=float(value))
    if param == "threshold":
        sigma = float(value)
        return replace(cfg, sigma_thz=sigma, sigma_mm=sigma * 1e-2,
                       sigma_me=sigma * 1e-2)
    raise ValueError(f"unknown sweep parameter {param!r}")


@dataclass(frozen=True)
class SweepSpec:
    """A cross product of schemes, swept values and seeds."""

    base: ExperimentConfig
    param: str
    values: tuple
    schemes: tuple[str, ...]
    seeds: tuple[int, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("sweep needs at least one value")
        if not self.seeds:
            raise ValueError("sweep needs at least one seed")


@dataclass(frozen=True)
class RunRecord:
    """One (scheme, swept value, seed) result."""

    scheme: str
    param: str
    value: float
    seed: int
    completed: int
    throughput_bps: float
    mean_delay_s: Optional[float]


def single_point_spec(cfg: ExperimentConfig) -> SweepSpec:
    """A degenerate sweep: just the config's own operating point."""
    return SweepSpec(base=cfg, param="flows", values=(cfg.num_flows,),
                     schemes=cfg.schemes, seeds=cfg.seeds)


def run_sweep(spec: SweepSpec, validate: bool = False) -> list[RunRecord]:
    """Evaluate the full cross product and return records ordered by
    (scheme, value, seed), matching the order given in the spec.

    With ``validate`` set, every schedule matrix is checked against the
    feasibility rules and a violation raises immediately.
    """
    results: dict[tuple[int, int, int], RunRecord] = {}
    for vi, value in enumerate(spec.values):
        cfg = apply_sweep_value(spec.base, spec.param, value)
        for si, seed in enumerate(spec.seeds):
            scenario = generate_scenario(cfg, seed)
            for ki, scheme in enumerate(spec.schemes):
                matrix, outcomes = run_scheme(scenario, scheme)
                if validate:
                    problems = validate_schedule(matrix, scenario,
                                                 require_contiguous=True)
                    if problems:
                        raise RuntimeError(
                            f"infeasible schedule (scheme={scheme}, "
                            f"{spec.param}={value}, seed={seed}): "
                            + "; ".join(problems[:5]))
                results[(ki, vi, si)] = RunRecord(
                    scheme=scheme, param=spec.param, value=float(value),
                    seed=seed,
                    completed=sum(1 for o in outcomes if o.completed),
                    throughput_bps=system_throughput(outcomes),
                    mean_delay_s=mean_delay(outcomes, scenario.frame))
    return [results[key] for key in sorted(results)]


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------

CSV_HEADER = "scheme,param,value,seed,completed,throughput_bps,mean_delay_s"


def _fmt(x) -> str:
    if x is None:
        return ""
    x = float(x)
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def write_csv(records: list[RunRecord], out: TextIO) -> None:
    """Serialize records; numeric formatting is locale-free and stable."""
    out.write(CSV_HEADER + "\n")
    for r in records:
        out.write(",".join([
            r.scheme, r.param, _fmt(r.value), str(r.seed), str(r.completed),
            _fmt(r.throughput_bps), _fmt(r.mean_delay_s)]) + "\n")
