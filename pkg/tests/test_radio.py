import math

import numpy as np
import pytest
from conftest import make_scenario

from triband import radio
from triband.experiments import ExperimentConfig
from triband.model import Band, BandParams
from triband.radio import (CassegrainAntenna, GeometryError, SectoredAntenna,
                           SPEED_OF_LIGHT, cassegrain_gain,
                           interferer_gain_outcomes, mmwave_interference,
                           mmwave_k0, mmwave_rx_power, off_axis_angle_deg,
                           sample_interferer_gain, shannon_rate,
                           thz_attenuation, thz_interference, thz_path_loss_db,
                           thz_rx_power)


def band(carrier_hz, bandwidth_hz=1e9, tx_power_w=1.0, mui=1.0,
         sigma=1e-4, n=2.0):
    return BandParams(carrier_hz=carrier_hz, bandwidth_hz=bandwidth_hz,
                      tx_power_w=tx_power_w, mui_factor=mui,
                      interference_threshold=sigma, path_loss_exponent=n)


class TestMmwaveK0:
    def test_28ghz(self):
        lam = SPEED_OF_LIGHT / 28e9
        assert mmwave_k0(28e9) == pytest.approx((lam / (4 * math.pi)) ** 2,
                                                rel=1e-12)
        assert mmwave_k0(28e9) == pytest.approx(7.26e-7, rel=1e-2)

    def test_73ghz(self):
        assert mmwave_k0(73e9) == pytest.approx(1.068e-7, rel=1e-3)

    def test_quarter_at_double_frequency(self):
        assert mmwave_k0(56e9) == pytest.approx(mmwave_k0(28e9) / 4,
                                                rel=1e-12)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            mmwave_k0(0.0)


class TestMmwaveRxPower:
    def test_reference_case(self):
        # 20 dB gain at both ends, 10 m, inverse-square, 1 W
        p = mmwave_rx_power(10.0, band(28e9), 100.0 * 100.0)
        assert p == pytest.approx(mmwave_k0(28e9) * 1e4 * 1e-2, rel=1e-12)
        assert p == pytest.approx(7.26e-5, rel=1e-2)

    def test_inverse_square_scaling(self):
        b = band(28e9)
        assert mmwave_rx_power(100.0, b, 1e4) == pytest.approx(
            mmwave_rx_power(10.0, b, 1e4) / 100.0, rel=1e-12)

    def test_unity_gain_at_reference_distance(self):
        b = band(28e9, tx_power_w=2.0)
        assert mmwave_rx_power(1.0, b, 1.0) == pytest.approx(
            mmwave_k0(28e9) * 2.0, rel=1e-12)

    def test_degenerate_distance(self):
        with pytest.raises(GeometryError):
            mmwave_rx_power(0.0, band(28e9), 1.0)


class TestMmwaveInterference:
    def test_same_formula_as_rx_power_at_unit_mui(self):
        b = band(28e9)
        assert mmwave_interference(10.0, b, 1e4) == pytest.approx(
            mmwave_rx_power(10.0, b, 1e4), rel=1e-12)

    def test_zero_mui(self):
        assert mmwave_interference(10.0, band(28e9, mui=0.0), 1e4) == 0.0

    def test_main_by_side_lobe_draw(self):
        # 50 m, gain product 100 * 1
        i = mmwave_interference(50.0, band(28e9), 100.0)
        assert i == pytest.approx(mmwave_k0(28e9) * 100.0 / 2500.0, rel=1e-12)
        assert i == pytest.approx(2.90e-8, rel=1e-2)


class TestInterfererGainSampling:
    def test_full_circle_beam_always_main(self):
        ant = SectoredAntenna(g_max=100.0, g_min=1.0,
                              beamwidth_rad=2 * math.pi)
        rng = np.random.default_rng(0)
        draws = {sample_interferer_gain(rng, ant, ant) for _ in range(50)}
        assert draws == {100.0 * 100.0}

    def test_probability_table(self):
        ant = SectoredAntenna.from_db(20.0, 0.0, math.pi / 6)
        products, probs = interferer_gain_outcomes(ant, ant)
        assert probs[0] == pytest.approx((1 / 12) ** 2, rel=1e-12)
        assert probs[0] == pytest.approx(6.94e-3, rel=1e-2)
        assert products == pytest.approx([1e4, 1e2, 1e2, 1.0])
        assert probs.sum() == pytest.approx(1.0, rel=1e-12)

    def test_empirical_frequencies(self):
        # lighter version of the acceptance check: 1e5 draws, 4-sigma bound
        from triband.radio import sample_interferer_gain_index

        ant = SectoredAntenna.from_db(20.0, 0.0, math.pi / 6)
        _, probs = interferer_gain_outcomes(ant, ant)
        rng = np.random.default_rng(42)
        n = 100_000
        draws = np.array([sample_interferer_gain_index(rng, ant, ant)
                          for _ in range(n)])
        for idx, p in enumerate(probs):
            observed = np.count_nonzero(draws == idx) / n
            bound = 4 * math.sqrt(p * (1 - p) / n)
            assert abs(observed - p) < bound

    def test_product_matches_index_stream(self):
        # the product sampler and the index sampler consume the same stream
        ant = SectoredAntenna.from_db(20.0, 0.0, math.pi / 6)
        products, _ = interferer_gain_outcomes(ant, ant)
        r1, r2 = np.random.default_rng(9), np.random.default_rng(9)
        for _ in range(500):
            from triband.radio import sample_interferer_gain_index
            assert sample_interferer_gain(r1, ant, ant) == products[
                sample_interferer_gain_index(r2, ant, ant)]


class TestThzPathLoss:
    def test_50m_at_340ghz(self):
        expected = 92.4 + 20 * math.log10(340) + 20 * math.log10(0.05)
        assert thz_path_loss_db(340e9, 50.0) == pytest.approx(expected,
                                                              rel=1e-12)
        assert thz_path_loss_db(340e9, 50.0) == pytest.approx(117.0, abs=0.05)

    def test_1km_at_340ghz(self):
        assert thz_path_loss_db(340e9, 1000.0) == pytest.approx(143.03,
                                                                abs=0.01)

    def test_20db_per_decade(self):
        assert (thz_path_loss_db(340e9, 500.0)
                - thz_path_loss_db(340e9, 50.0)) == pytest.approx(20.0,
                                                                  rel=1e-12)

    def test_degenerate_distance(self):
        with pytest.raises(GeometryError):
            thz_path_loss_db(340e9, 0.0)


class TestThzRxPower:
    def test_boresight_reference_case(self):
        b = band(340e9, bandwidth_hz=10e9, tx_power_w=20e-3)
        gains = 10 ** 4.7 * 10 ** 4.7
        p = thz_rx_power(50.0, b, gains)
        loss_db = thz_path_loss_db(340e9, 50.0)
        assert p == pytest.approx(20e-3 * 10 ** (-loss_db / 10) * 10 ** 9.4,
                                  rel=1e-12)
        assert p == pytest.approx(1.0e-4, rel=2e-2)

    def test_lossless_identity(self):
        # pick a distance where the dB loss is exactly zero
        d = 10 ** (-92.4 / 20) / 340 * 1000.0
        b = band(340e9, tx_power_w=20e-3)
        assert thz_rx_power(d, b, 1.0) == pytest.approx(20e-3, rel=1e-9)

    def test_inverse_square(self):
        b = band(340e9, tx_power_w=20e-3)
        assert thz_rx_power(25.0, b, 1.0) == pytest.approx(
            4 * thz_rx_power(50.0, b, 1.0), rel=1e-9)


class TestCassegrainGain:
    def test_boresight(self):
        assert cassegrain_gain(0.0) == pytest.approx(47.0)

    def test_far_region(self):
        assert cassegrain_gain(100.0) == -13.0

    def test_skirt_at_20_degrees(self):
        ant = CassegrainAntenna()
        assert 20.0 >= ant.phi_r_deg
        assert cassegrain_gain(20.0) == pytest.approx(32 - 25 * math.log10(20),
                                                      rel=1e-12)
        assert cassegrain_gain(20.0) == pytest.approx(-0.53, abs=0.01)

    def test_derived_mask_parameters(self):
        ant = CassegrainAntenna()
        assert ant.g1_dbi == pytest.approx(2 + 15 * math.log10(152), rel=1e-12)
        assert ant.phi_m_deg == pytest.approx(
            (20 / 152) * math.sqrt(47 - ant.g1_dbi), rel=1e-12)
        assert ant.phi_r_deg == pytest.approx(15.85 * 152 ** -0.6, rel=1e-12)

    def test_symmetry_folding(self):
        assert cassegrain_gain(350.0) == pytest.approx(cassegrain_gain(10.0))
        assert cassegrain_gain(-10.0) == pytest.approx(cassegrain_gain(10.0))

    def test_non_increasing_with_known_discontinuity(self):
        ant = CassegrainAntenna()
        phi = np.arange(0.0, 180.05, 0.1)
        gains = ant.gain_dbi(phi)
        assert np.all(np.diff(gains) <= 1e-9)
        # the ITU mask drops discontinuously at 48 degrees
        jump = ant.gain_dbi(48.0 - 1e-9) - ant.gain_dbi(48.0)
        assert ant.gain_dbi(48.0) == -13.0
        assert jump == pytest.approx((32 - 25 * math.log10(48)) + 13,
                                     abs=1e-6)


class TestThzInterference:
    def test_zero_mui(self):
        b = band(340e9, tx_power_w=20e-3, mui=0.0)
        i = thz_interference((0, 0), (10, 0), (5, 20), (5, 30), b,
                             CassegrainAntenna())
        assert i == 0.0

    def test_mutual_boresight_equals_rx_power(self):
        # victim receiver sits on the interferer's boresight ray and the
        # victim's own transmitter is behind the interferer on that ray
        b = band(340e9, tx_power_w=20e-3)
        ant = CassegrainAntenna()
        tx = (0.0, 0.0)
        victim_rx = (30.0, 0.0)
        i = thz_interference(tx, (60.0, 0.0), victim_rx, (-10.0, 0.0), b, ant)
        expected = thz_rx_power(30.0, b, ant.boresight_gain_linear ** 2)
        assert i == pytest.approx(expected, rel=1e-12)

    def test_right_angles_hit_far_region(self):
        b = band(340e9, tx_power_w=20e-3)
        ant = CassegrainAntenna()
        # both off-axis angles are 90 degrees: -13 dBi at each end
        i = thz_interference((0, 0), (0, 50), (40, 0), (40, 50), b, ant)
        expected = (thz_attenuation(340e9, 40.0)
                    * 10 ** (-1.3) * 10 ** (-1.3) * 20e-3)
        assert i == pytest.approx(expected, rel=1e-12)

    def test_coincident_positions_rejected(self):
        b = band(340e9, tx_power_w=20e-3)
        with pytest.raises(GeometryError):
            thz_interference((0, 0), (10, 0), (0, 0), (5, 5), b,
                             CassegrainAntenna())


class TestOffAxisAngle:
    def test_perpendicular(self):
        assert off_axis_angle_deg((0, 0), (0, 10), (7, 0)) == pytest.approx(
            90.0)

    def test_collinear(self):
        assert off_axis_angle_deg((0, 0), (10, 0), (25, 0)) == pytest.approx(
            0.0, abs=1e-9)


class TestLinkRate:
    def test_noise_limited_28ghz_reference(self):
        sc = make_scenario([(0, 0), (10, 0)], [(0, 1, 1e9)])
        rate = radio.link_rate(sc, 0, [], Band.MM28)
        p = mmwave_k0(28e9) * 1e4 * 1e-2
        n0 = 10 ** (-134 / 10) * 1e-3 / 1e6
        expected = 0.5 * 0.8e9 * math.log2(1 + p / (n0 * 0.8e9))
        assert rate == pytest.approx(expected, rel=1e-9)
        assert rate == pytest.approx(1.24e10, rel=1e-2)

    def test_zero_power_zero_rate(self):
        frame = ExperimentConfig().frame()
        assert shannon_rate(0.0, 0.0, band(28e9, bandwidth_hz=0.8e9),
                            frame) == 0.0

    def test_interferer_strictly_decreases_rate(self):
        sc = make_scenario([(0, 0), (10, 0), (50, 50), (60, 50)],
                           [(0, 1, 1e9), (2, 3, 1e9)],
                           gain_products=100.0)
        alone = radio.link_rate(sc, 0, [], Band.MM28)
        with_j = radio.link_rate(sc, 0, [1], Band.MM28)
        assert with_j < alone

    def test_monotone_in_interferer_set(self):
        sc = make_scenario(
            [(0, 0), (10, 0), (50, 50), (60, 50), (90, 10), (95, 20)],
            [(0, 1, 1e9), (2, 3, 1e9), (4, 5, 1e9)],
            gain_products=100.0)
        r1 = radio.link_rate(sc, 0, [1], Band.MM28)
        r2 = radio.link_rate(sc, 0, [1, 2], Band.MM28)
        assert r2 <= r1


class TestSanityBounds:
    def test_rx_never_exceeds_tx_times_gains(self):
        rng = np.random.default_rng(11)
        b_mm = band(28e9)
        b_thz = band(340e9, tx_power_w=20e-3)
        ant = CassegrainAntenna()
        for _ in range(200):
            d = rng.uniform(0.5, 140.0)
            gains = 1e4
            assert mmwave_rx_power(d, b_mm, gains) <= b_mm.tx_power_w * gains
            g2 = ant.boresight_gain_linear ** 2
            assert thz_rx_power(d, b_thz, g2) <= b_thz.tx_power_w * g2

    def test_rates_finite_on_arena_geometries(self):
        cfg = ExperimentConfig(num_flows=25, num_slots=10)
        from triband.experiments import generate_scenario
        sc = generate_scenario(cfg, 5)
        for flow in sc.flows:
            for b in (Band.MM28, Band.EBAND, Band.THZ):
                r = radio.interference_free_rate(sc, flow.id, b)
                assert np.isfinite(r) and r >= 0
