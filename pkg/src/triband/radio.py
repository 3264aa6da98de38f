"""Link-budget physics: antennas, path loss, received power, interference
and Shannon rates for every band.

The mmWave-style bands (28 GHz, E-band, and the dual-band scheme's
2.4/60 GHz) use a free-space power law with sectored antennas; the THz
band uses a dB path-loss formula with a narrow-beam parabolic antenna
mask.  Everything below works in linear SI units; the only dB quantities
are the THz path loss and antenna mask, converted before they touch a
power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .model import Band, BandParams, FrameConfig, MMWAVE_STYLE_BANDS, Scenario

SPEED_OF_LIGHT = 2.99792458e8  # m/s


class GeometryError(ValueError):
    """Raised for degenerate geometry (coincident endpoints)."""


def db_to_linear(db: float):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


def noise_psd_from_dbm_per_mhz(dbm_per_mhz: float) -> float:
    """Convert a noise density quoted in dBm/MHz to W/Hz."""
    return 10.0 ** (dbm_per_mhz / 10.0) * 1e-3 / 1e6


@dataclass(frozen=True)
class SectoredAntenna:
    """Two-level sectored radiation pattern for the mmWave-style bands.

    Gains are linear; the pattern is ``g_max`` inside the main lobe of
    width ``beamwidth_rad`` and ``g_min`` outside it.
    """

    g_max: float
    g_min: float
    beamwidth_rad: float

    def __post_init__(self):
        if not self.g_max >= self.g_min > 0:
            raise ValueError("require g_max >= g_min > 0")
        # 2*pi inclusive: a full-circle main lobe is the always-aligned limit
        if not 0 < self.beamwidth_rad <= 2 * math.pi:
            raise ValueError("beamwidth must be in (0, 2*pi]")

    @classmethod
    def from_db(cls, g_max_db: float, g_min_db: float,
                beamwidth_rad: float) -> "SectoredAntenna":
        return cls(db_to_linear(g_max_db), db_to_linear(g_min_db),
                   beamwidth_rad)

    @property
    def main_lobe_prob(self) -> float:
        """Probability that a uniformly pointed beam covers a given direction."""
        return self.beamwidth_rad / (2 * math.pi)


def interferer_gain_outcomes(
        tx: SectoredAntenna, rx: SectoredAntenna) -> tuple[np.ndarray, np.ndarray]:
    """Possible interferer-to-victim gain products and their probabilities.

    Interfering beams are assumed uniformly pointed, so each end of the
    cross link is independently in the main lobe with probability
    beamwidth / 2*pi.  Returns (products, probabilities), both length 4,
    ordered max*max, max*min, min*max, min*min.
    """
    pt, pr = tx.main_lobe_prob, rx.main_lobe_prob
    products = np.array([
        tx.g_max * rx.g_max,
        tx.g_max * rx.g_min,
        tx.g_min * rx.g_max,
        tx.g_min * rx.g_min,
    ])
    probs = np.array([
        pt * pr,
        pt * (1 - pr),
        (1 - pt) * pr,
        (1 - pt) * (1 - pr),
    ])
    return products, probs


def sample_interferer_gain_index(rng: np.random.Generator, tx: SectoredAntenna,
                                 rx: SectoredAntenna) -> int:
    """Draw the outcome index (0..3) of one gain draw; one uniform consumed.

    With equal antennas the two mixed products share a value, so tests of
    the four-way distribution need the index, not the product.
    """
    _, probs = interferer_gain_outcomes(tx, rx)
    u = rng.random()
    return min(int(np.searchsorted(np.cumsum(probs), u, side="right")), 3)


def sample_interferer_gain(rng: np.random.Generator, tx: SectoredAntenna,
                           rx: SectoredAntenna) -> float:
    """Draw one interferer-to-victim gain product (one uniform consumed)."""
    products, _ = interferer_gain_outcomes(tx, rx)
    return float(products[sample_interferer_gain_index(rng, tx, rx)])


@dataclass(frozen=True)
class CassegrainAntenna:
    """ITU-R F.699-style narrow-beam parabolic mask used for the THz band.

    Gains are in dBi.  The mask has a quadratic main lobe, a flat second
    side lobe at ``g1_dbi``, a log-law skirt, and a -13 dBi far region;
    it is deliberately discontinuous at 48 degrees.
    """

    g_max_dbi: float = 47.0
    d_over_lambda: float = 152.0

    @cached_property
    def g1_dbi(self) -> float:
        return 2.0 + 15.0 * math.log10(self.d_over_lambda)

    @cached_property
    def phi_m_deg(self) -> float:
        return (20.0 / self.d_over_lambda) * math.sqrt(
            self.g_max_dbi - self.g1_dbi)

    @cached_property
    def phi_r_deg(self) -> float:
        return 15.85 * self.d_over_lambda ** -0.6

    def gain_dbi(self, phi_deg):
        """Gain (dBi) at off-axis angle ``phi_deg``; accepts arrays.

        Angles are folded to [0, 180] by symmetry.
        """
        phi = np.abs(np.asarray(phi_deg, dtype=float)) % 360.0
        phi = np.where(phi > 180.0, 360.0 - phi, phi)
        with np.errstate(divide="ignore"):
            skirt = 32.0 - 25.0 * np.log10(np.maximum(phi, 1e-300))
        out = np.select(
            [phi < self.phi_m_deg, phi < self.phi_r_deg, phi < 48.0],
            [self.g_max_dbi - 2.5e-3 * (self.d_over_lambda * phi) ** 2,
             self.g1_dbi,
             skirt],
            default=-13.0,
        )
        if np.isscalar(phi_deg):
            return float(out)
        return out

    def gain_linear(self, phi_deg):
        return db_to_linear(self.gain_dbi(phi_deg))

    @property
    def boresight_gain_linear(self) -> float:
        return float(db_to_linear(self.g_max_dbi))


def cassegrain_gain(phi_deg, antenna: CassegrainAntenna | None = None):
    """Narrow-beam antenna gain in dBi at an off-axis angle in degrees."""
    return (antenna or CassegrainAntenna()).gain_dbi(phi_deg)


# ---------------------------------------------------------------------------
# mmWave-style channel (28 GHz, E-band, 2.4 GHz, 60 GHz)
# ---------------------------------------------------------------------------

def mmwave_k0(carrier_hz: float) -> float:
    """Free-space loss factor (wavelength / 4*pi)^2 at 1 m reference."""
    if carrier_hz <= 0:
        raise ValueError("carrier frequency must be positive")
    lam = SPEED_OF_LIGHT / carrier_hz
    return (lam / (4 * math.pi)) ** 2


def mmwave_rx_power(distance_m: float, band: BandParams,
                    gain_product: float) -> float:
    """Received power (W) over a free-space link with the given gain product."""
    if distance_m <= 0:
        raise GeometryError("mmWave link requires distance > 0")
    k0 = mmwave_k0(band.carrier_hz)
    return (k0 * gain_product * distance_m ** -band.path_loss_exponent
            * band.tx_power_w)


def mmwave_interference(distance_m: float, band: BandParams,
                        sampled_gain_product: float) -> float:
    """Interference power (W) at a victim receiver from a co-band transmitter.

    ``sampled_gain_product`` is the fixed per-pair draw from the sectored
    gain table; the MUI factor scales the whole term.
    """
    if distance_m <= 0:
        raise GeometryError("interferer coincides with victim receiver")
    k0 = mmwave_k0(band.carrier_hz)
    return (band.mui_factor * k0 * sampled_gain_product
            * distance_m ** -band.path_loss_exponent * band.tx_power_w)


# ---------------------------------------------------------------------------
# THz channel (340 GHz)
# ---------------------------------------------------------------------------

def thz_path_loss_db(carrier_hz: float, distance_m: float) -> float:
    """THz path loss in dB: 92.4 + 20 lg f[GHz] + 20 lg d[km]."""
    if distance_m <= 0:
        raise GeometryError("THz link requires distance > 0")
    f_ghz = carrier_hz / 1e9
    d_km = distance_m / 1e3
    return 92.4 + 20.0 * math.log10(f_ghz) + 20.0 * math.log10(d_km)


def thz_attenuation(carrier_hz: float, distance_m):
    """Linear power attenuation 10^(-L/10) for the THz path loss."""
    d = np.asarray(distance_m, dtype=float)
    if np.any(d <= 0):
        raise GeometryError("THz link requires distance > 0")
    f_ghz = carrier_hz / 1e9
    loss_db = 92.4 + 20.0 * np.log10(f_ghz) + 20.0 * np.log10(d / 1e3)
    out = db_to_linear(-loss_db)
    if np.isscalar(distance_m):
        return float(out)
    return out


def thz_rx_power(distance_m: float, band: BandParams,
                 gain_product: float) -> float:
    """Received THz power (W); the dB loss is applied as linear attenuation."""
    return (thz_attenuation(band.carrier_hz, distance_m) * gain_product
            * band.tx_power_w)


def off_axis_angle_deg(origin, boresight_target, other_target) -> float:
    """Angle at ``origin`` between the directions to two targets, in degrees."""
    a = np.asarray(boresight_target, dtype=float) - np.asarray(origin, dtype=float)
    b = np.asarray(other_target, dtype=float) - np.asarray(origin, dtype=float)
    na, nb = math.hypot(*a), math.hypot(*b)
    if na == 0 or nb == 0:
        raise GeometryError("coincident positions leave the beam angle undefined")
    cos = float(np.dot(a, b)) / (na * nb)
    return math.degrees(math.acos(max(-1.0, min(1.0, cos))))


def thz_interference(tx_pos, tx_boresight_pos, victim_rx_pos, victim_tx_pos,
                     band: BandParams, antenna: CassegrainAntenna) -> float:
    """Interference power (W) between two concurrent THz flows.

    The interfering transmitter at ``tx_pos`` points at its own receiver
    ``tx_boresight_pos``; the victim receiver at ``victim_rx_pos`` points
    at its own transmitter ``victim_tx_pos``.  Both ends contribute the
    mask gain at their respective off-axis angles.
    """
    phi_t = off_axis_angle_deg(tx_pos, tx_boresight_pos, victim_rx_pos)
    phi_r = off_axis_angle_deg(victim_rx_pos, victim_tx_pos, tx_pos)
    d = math.hypot(victim_rx_pos[0] - tx_pos[0], victim_rx_pos[1] - tx_pos[1])
    atten = thz_attenuation(band.carrier_hz, d)
    return (band.mui_factor * atten * antenna.gain_linear(phi_t)
            * antenna.gain_linear(phi_r) * band.tx_power_w)


# ---------------------------------------------------------------------------
# Rates
# ---------------------------------------------------------------------------

def shannon_rate(p_rx_w: float, interference_w: float, band: BandParams,
                 frame: FrameConfig) -> float:
    """Transceiver-limited Shannon rate in bits/s."""
    noise = frame.noise_psd_w_per_hz * band.bandwidth_hz
    sinr = p_rx_w / (noise + interference_w)
    return frame.efficiency * band.bandwidth_hz * math.log2(1.0 + sinr)


# ---------------------------------------------------------------------------
# Scenario-aware helpers (dispatch on band kind)
# ---------------------------------------------------------------------------

def desired_gain_product(scenario: Scenario, band_tag: Band) -> float:
    """Gain product of a desired link (perfect alignment at both ends)."""
    if band_tag in MMWAVE_STYLE_BANDS:
        g = scenario.sectored.g_max
        return g * g
    g = scenario.cassegrain.boresight_gain_linear
    return g * g


def rx_power(scenario: Scenario, flow_id: int, band_tag: Band) -> float:
    """Received power of a flow's desired link in the given band."""
    d = scenario.flow_distance(flow_id)
    band = scenario.bands[band_tag]
    gains = desired_gain_product(scenario, band_tag)
    if band_tag in MMWAVE_STYLE_BANDS:
        return mmwave_rx_power(d, band, gains)
    return thz_rx_power(d, band, gains)


def interference_power(scenario: Scenario, interferer_id: int,
                       victim_id: int, band_tag: Band) -> float:
    """Interference from one co-band flow's transmitter at another's receiver."""
    band = scenario.bands[band_tag]
    if band_tag in MMWAVE_STYLE_BANDS:
        gain = scenario.interferer_gain_table[interferer_id, victim_id]
        return mmwave_interference(
            scenario.cross_distance(interferer_id, victim_id), band, gain)
    return thz_interference(
        scenario.src_positions[interferer_id],
        scenario.dst_positions[interferer_id],
        scenario.dst_positions[victim_id],
        scenario.src_positions[victim_id],
        band, scenario.cassegrain)


def interference_free_rate(scenario: Scenario, flow_id: int,
                           band_tag: Band) -> float:
    """Rate of a flow transmitting alone in a band (no co-band flows)."""
    return shannon_rate(rx_power(scenario, flow_id, band_tag), 0.0,
                        scenario.bands[band_tag], scenario.frame)


def link_rate(scenario: Scenario, flow_id: int, concurrent_ids,
              band_tag: Band) -> float:
    """Rate of a flow against a set of concurrent same-band flows."""
    total_i = sum(
        interference_power(scenario, j, flow_id, band_tag)
        for j in concurrent_ids if j != flow_id)
    return shannon_rate(rx_power(scenario, flow_id, band_tag), total_i,
                        scenario.bands[band_tag], scenario.frame)
