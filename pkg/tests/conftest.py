"""Shared helpers for building hand-crafted scenarios."""

import numpy as np
import pytest

from triband.experiments import ExperimentConfig, default_sectored_antenna
from triband.model import BaseStation, Flow, Scenario
from triband.radio import CassegrainAntenna


def make_scenario(positions, flow_specs, *, num_slots=2000, gain_products=None,
                  cfg=None, **cfg_overrides):
    """Scenario from explicit station positions and (src, dst, qos) triples.

    ``gain_products`` fills the whole interferer gain table with one value
    (default: side-lobe product 1.0, the weakest draw) unless an array is
    given; hand-built tests usually want deterministic interference.
    """
    if cfg is None:
        cfg = ExperimentConfig(num_stations=len(positions),
                               num_flows=len(flow_specs),
                               num_slots=num_slots, **cfg_overrides)
    stations = [BaseStation(i, float(x), float(y))
                for i, (x, y) in enumerate(positions)]
    flows = [Flow(i, src, dst, float(qos))
             for i, (src, dst, qos) in enumerate(flow_specs)]
    n = len(flows)
    if gain_products is None:
        table = np.ones((n, n))
    elif np.isscalar(gain_products):
        table = np.full((n, n), float(gain_products))
    else:
        table = np.asarray(gain_products, dtype=float)
    np.fill_diagonal(table, 0.0)
    return Scenario(stations=stations, flows=flows, frame=cfg.frame(),
                    bands=cfg.band_params(), seed=0,
                    interferer_gain_table=table,
                    sectored=default_sectored_antenna(),
                    cassegrain=CassegrainAntenna())


@pytest.fixture
def table3_config():
    """The paper-style default operating point."""
    return ExperimentConfig()
