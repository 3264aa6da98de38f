import math

import numpy as np
import pytest
from conftest import make_scenario

from triband.model import (Band, BandParams, BaseStation, Flow, FrameConfig,
                           adjacent, distance, frame_duration, throughput)


def bs(i, x, y):
    return BaseStation(i, x, y)


class TestDistance:
    def test_identical_points(self):
        assert distance(bs(0, 0, 0), bs(1, 0, 0)) == 0.0

    def test_3_4_5_triangle(self):
        assert distance(bs(0, 0, 0), bs(1, 3, 4)) == pytest.approx(5.0)

    def test_hand_evaluated(self):
        # sqrt(60^2 + 80^2) = 100
        assert distance(bs(0, 10, 20), bs(1, 70, 100)) == pytest.approx(100.0)

    def test_symmetric(self):
        a, b = bs(0, 1.5, -2.0), bs(1, 7.25, 3.0)
        assert distance(a, b) == distance(b, a) >= 0


class TestAdjacent:
    def test_shared_middle_station(self):
        assert adjacent(Flow(0, 0, 1, 1.0), Flow(1, 1, 2, 1.0))

    def test_disjoint_endpoints(self):
        assert not adjacent(Flow(0, 0, 1, 1.0), Flow(1, 2, 3, 1.0))

    def test_shared_source_destination(self):
        assert adjacent(Flow(0, 0, 1, 1.0), Flow(1, 2, 0, 1.0))

    def test_symmetric(self):
        i, j = Flow(0, 0, 1, 1.0), Flow(1, 1, 2, 1.0)
        assert adjacent(i, j) == adjacent(j, i)


def frame(num_slots, slot_s, sched_phase_s):
    return FrameConfig(num_slots=num_slots, slot_s=slot_s,
                       sched_phase_s=sched_phase_s,
                       noise_psd_w_per_hz=3.981e-23, efficiency=0.5,
                       thz_ref_dist_m=50.0)


class TestFrameDuration:
    def test_table_values(self):
        f = frame(2000, 18e-6, 850e-6)
        assert frame_duration(f) == pytest.approx(36.85e-3, rel=1e-12)

    def test_single_second_slot(self):
        # sched_phase must be positive; make it negligible instead of zero
        f = frame(1, 1.0, 1e-12)
        assert frame_duration(f) == pytest.approx(1.0, rel=1e-9)

    def test_half_frame(self):
        f = frame(500, 18e-6, 850e-6)
        assert frame_duration(f) == pytest.approx(9.85e-3, rel=1e-12)


class TestThroughput:
    def test_all_idle(self):
        f = frame(100, 18e-6, 850e-6)
        assert throughput(np.zeros(100), f) == 0.0

    def test_constant_rate_frame_factor(self):
        f = frame(2000, 18e-6, 850e-6)
        rate = 1.0
        expected = rate * 36000.0 / 36850.0
        assert throughput(np.full(2000, rate), f) == pytest.approx(
            expected, rel=1e-12)

    def test_single_active_slot(self):
        f = frame(2000, 18e-6, 850e-6)
        rates = np.zeros(2000)
        rates[7] = 1e9
        expected = 1e9 * 18e-6 / 36.85e-3
        assert throughput(rates, f) == pytest.approx(expected, rel=1e-12)

    def test_linear_in_rates(self):
        f = frame(50, 18e-6, 850e-6)
        rng = np.random.default_rng(3)
        rates = rng.uniform(0, 1e10, 50)
        for c in (0.0, 0.5, 3.0):
            assert throughput(c * rates, f) == pytest.approx(
                c * throughput(rates, f), abs=1e-3)

    def test_wrong_length_rejected(self):
        f = frame(10, 18e-6, 850e-6)
        with pytest.raises(ValueError):
            throughput(np.zeros(9), f)


class TestTypeInvariants:
    def test_flow_same_endpoints_rejected(self):
        with pytest.raises(ValueError):
            Flow(0, 3, 3, 1e6)

    def test_flow_nonpositive_qos_rejected(self):
        with pytest.raises(ValueError):
            Flow(0, 0, 1, 0.0)

    def test_band_params_positive(self):
        with pytest.raises(ValueError):
            BandParams(carrier_hz=-1.0, bandwidth_hz=1e9, tx_power_w=1.0,
                       mui_factor=1.0, interference_threshold=1e-4,
                       path_loss_exponent=2.0)

    def test_frame_efficiency_range(self):
        with pytest.raises(ValueError):
            FrameConfig(num_slots=10, slot_s=18e-6, sched_phase_s=850e-6,
                        noise_psd_w_per_hz=3.981e-23, efficiency=1.5,
                        thz_ref_dist_m=50.0)

    def test_band_enum_has_five_tags(self):
        assert {b.value for b in Band} == {"mm28", "eband", "thz", "sub6",
                                           "mm60"}


class TestScenarioInvariants:
    def test_unknown_station_rejected(self):
        with pytest.raises(ValueError):
            make_scenario([(0, 0), (10, 0)], [(0, 5, 1e6)])

    def test_gain_table_shape_checked(self):
        with pytest.raises(ValueError):
            make_scenario([(0, 0), (10, 0)], [(0, 1, 1e6)],
                          gain_products=np.ones((3, 3)))

    def test_geometry_caches(self):
        sc = make_scenario([(0, 0), (30, 40), (90, 0)],
                           [(0, 1, 1e6), (1, 2, 1e6)])
        assert sc.flow_distance(0) == pytest.approx(50.0)
        assert sc.cross_distance(1, 0) == pytest.approx(
            math.hypot(30 - 30, 40 - 40))
        # interferer 0's transmitter (0,0) to victim 1's receiver (90,0)
        assert sc.cross_distance(0, 1) == pytest.approx(90.0)
