"""Concurrency rules between flows.

Two flows may not transmit in the same slot if they share a base station
(any band combination, half-duplex radios) or if they sit in the same
band and the relative interference in either direction exceeds the
band's threshold.  ``ConflictGraph`` precomputes these pairwise verdicts
plus the per-flow quantities the schedulers need every slot.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import radio
from .model import Band, Flow, MMWAVE_STYLE_BANDS, Scenario, adjacent


def degrees(flows: list[Flow]) -> dict[int, int]:
    """Number of flows sharing a base station with each flow.

    Depends only on flow endpoints; relative-interference conflicts do
    not count toward the degree.
    """
    out = {}
    for f in flows:
        out[f.id] = sum(
            1 for g in flows if g.id != f.id and adjacent(f, g))
    return out


def relative_interference(scenario: Scenario, interferer_id: int,
                          victim_id: int, band_tag: Band) -> float:
    """Interference power at the victim divided by its desired power."""
    i = radio.interference_power(scenario, interferer_id, victim_id, band_tag)
    p = radio.rx_power(scenario, victim_id, band_tag)
    return i / p


def conflicts(scenario: Scenario, i: int, j: int, band_i: Band,
              band_j: Band) -> bool:
    """Whether flows ``i`` and ``j`` may never share a slot.

    Adjacency conflicts apply across bands; interference conflicts only
    within a band, and in either direction (both flows' receivers must be
    protected).
    """
    if adjacent(scenario.flows[i], scenario.flows[j]):
        return True
    if band_i != band_j:
        return False
    sigma = scenario.bands[band_i].interference_threshold
    return (relative_interference(scenario, j, i, band_i) > sigma
            or relative_interference(scenario, i, j, band_i) > sigma)


@dataclass
class ConflictGraph:
    """Precomputed pairwise conflict data for one band assignment.

    Arrays are indexed by flow id.  ``ri[j, i]`` and ``interference[j, i]``
    are only meaningful for same-band non-adjacent pairs of assigned
    flows (zero elsewhere); ``conflict`` is symmetric and covers both the
    adjacency and threshold rules.  ``degree`` counts shared-BS neighbors
    among the assigned flows only.
    """

    per_flow_band: dict[int, Band]
    adjacency: np.ndarray       # bool  [F, F]
    ri: np.ndarray              # float [F, F]
    interference: np.ndarray    # float [F, F], watts
    conflict: np.ndarray        # bool  [F, F]
    rx_power: np.ndarray        # float [F], watts in assigned band
    noise_w: np.ndarray         # float [F], N0 * W of assigned band
    bandwidth_hz: np.ndarray    # float [F]
    degree: dict[int, int]

    @classmethod
    def build(cls, scenario: Scenario,
              per_flow_band: dict[int, Band]) -> "ConflictGraph":
        n = scenario.num_flows
        src = np.array([f.src for f in scenario.flows])
        dst = np.array([f.dst for f in scenario.flows])
        adj = ((src[:, None] == src[None, :]) | (src[:, None] == dst[None, :])
               | (dst[:, None] == src[None, :]) | (dst[:, None] == dst[None, :]))
        np.fill_diagonal(adj, False)

        ri = np.zeros((n, n))
        interference = np.zeros((n, n))
        p_rx = np.zeros(n)
        noise = np.zeros(n)
        width = np.zeros(n)
        conflict = np.zeros((n, n), dtype=bool)

        for band_tag in set(per_flow_band.values()):
            members = np.array(sorted(
                i for i, b in per_flow_band.items() if b is band_tag))
            band = scenario.bands[band_tag]
            p_m = _desired_powers(scenario, members, band_tag)
            p_rx[members] = p_m
            noise[members] = scenario.frame.noise_psd_w_per_hz * band.bandwidth_hz
            width[members] = band.bandwidth_hz
            if len(members) > 1:
                i_m = _pairwise_interference(scenario, members, band_tag)
                np.fill_diagonal(i_m, 0.0)
                ri_m = i_m / p_m[None, :]
                block = np.ix_(members, members)
                interference[block] = i_m
                ri[block] = ri_m
                over = (ri_m > band.interference_threshold)
                conflict[block] = over | over.T

        conflict |= adj
        np.fill_diagonal(conflict, False)

        assigned = sorted(per_flow_band)
        idx = np.array(assigned, dtype=int)
        if len(idx):
            deg = adj[np.ix_(idx, idx)].sum(axis=1)
            degree = {i: int(d) for i, d in zip(assigned, deg)}
        else:
            degree = {}

        return cls(per_flow_band=dict(per_flow_band), adjacency=adj, ri=ri,
                   interference=interference, conflict=conflict,
                   rx_power=p_rx, noise_w=noise, bandwidth_hz=width,
                   degree=degree)


def _desired_powers(scenario: Scenario, members: np.ndarray,
                    band_tag: Band) -> np.ndarray:
    """Vectorized desired received power for the member flows."""
    band = scenario.bands[band_tag]
    d = np.hypot(*(scenario.src_positions[members]
                   - scenario.dst_positions[members]).T).reshape(len(members))
    if np.any(d <= 0):
        raise radio.GeometryError("flow with coincident endpoints")
    gains = radio.desired_gain_product(scenario, band_tag)
    if band_tag in MMWAVE_STYLE_BANDS:
        k0 = radio.mmwave_k0(band.carrier_hz)
        return k0 * gains * d ** -band.path_loss_exponent * band.tx_power_w
    return radio.thz_attenuation(band.carrier_hz, d) * gains * band.tx_power_w


def _pairwise_interference(scenario: Scenario, members: np.ndarray,
                           band_tag: Band) -> np.ndarray:
    """Vectorized interferer-to-victim power matrix for the member flows.

    Entry [a, b] is the power member ``a``'s transmitter lands on member
    ``b``'s receiver; diagonal entries are meaningless.
    """
    band = scenario.bands[band_tag]
    s = scenario.src_positions[members]
    r = scenario.dst_positions[members]
    diff = s[:, None, :] - r[None, :, :]
    d_cross = np.hypot(diff[..., 0], diff[..., 1])
    np.fill_diagonal(d_cross, 1.0)
    # zero cross distance means a shared station: the pair is adjacent and
    # its entry is never read, but keep the arithmetic finite
    d_cross[d_cross == 0] = 1.0

    if band_tag in MMWAVE_STYLE_BANDS:
        k0 = radio.mmwave_k0(band.carrier_hz)
        gains = scenario.interferer_gain_table[np.ix_(members, members)]
        return (band.mui_factor * k0 * gains
                * d_cross ** -band.path_loss_exponent * band.tx_power_w)

    # THz: mask gains at the off-axis angles of both link ends.
    # phi_t[a, b]: at a's transmitter, between a's receiver and b's receiver.
    # phi_r[a, b]: at b's receiver, between b's transmitter and a's transmitter.
    bore_t = r - s                                 # a's boresight at its tx
    to_victim = r[None, :, :] - s[:, None, :]      # tx_a -> rx_b
    phi_t = _angles_deg(bore_t[:, None, :], to_victim)
    bore_r = s - r                                 # b's boresight at its rx
    to_interf = s[:, None, :] - r[None, :, :]      # rx_b -> tx_a
    phi_r = _angles_deg(bore_r[None, :, :], to_interf)
    g_t = scenario.cassegrain.gain_linear(phi_t)
    g_r = scenario.cassegrain.gain_linear(phi_r)
    atten = radio.thz_attenuation(band.carrier_hz, d_cross)
    return band.mui_factor * atten * g_t * g_r * band.tx_power_w


def _angles_deg(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Angles between broadcast pairs of 2-vectors, in degrees."""
    dot = (a * b).sum(axis=-1)
    na = np.hypot(a[..., 0], a[..., 1])
    nb = np.hypot(b[..., 0], b[..., 1])
    denom = na * nb
    denom = np.where(denom == 0, 1.0, denom)  # diagonal placeholder
    cos = np.clip(dot / denom, -1.0, 1.0)
    return np.degrees(np.arccos(cos))
