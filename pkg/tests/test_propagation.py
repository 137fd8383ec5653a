import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from skinsar.constants import FREE_SPACE_IMPEDANCE as ETA0
from skinsar.errors import InvalidParameter, NotSteerable, ZeroDistance
from skinsar.propagation import (SIDELOBE_FLOOR, FieldSample, Isotropic, RadioSource, Sector,
                                 SteeredBeam, field_from_pd, pd_from_field, pd_isotropic,
                                 pd_link_budget, point_pattern, poynting)


def cross_by_hand(a, b):
    return np.array([
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])


class TestPoynting:
    def test_orthogonal_plane_wave(self):
        e0 = 7.0
        res = poynting(FieldSample([e0, 0, 0], [0, e0 / ETA0, 0]))
        assert res.vector[2].real == pytest.approx(e0 ** 2 / ETA0, rel=1e-15)
        assert res.pd == pytest.approx(pd_from_field(e0), rel=1e-15)

    def test_parallel_fields_carry_no_power(self):
        res = poynting(FieldSample([1.0, 2.0, 3.0], [0.5, 1.0, 1.5]))
        np.testing.assert_array_equal(res.vector, 0)
        assert res.pd == 0

    def test_random_complex_matches_hand_cross_product(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            e = rng.normal(size=3) + 1j * rng.normal(size=3)
            h = rng.normal(size=3) + 1j * rng.normal(size=3)
            res = poynting(FieldSample(e, h))
            np.testing.assert_allclose(res.vector, cross_by_hand(e, np.conj(h)), rtol=1e-13, atol=1e-15)

    def test_peak_phasors_are_halved(self):
        e0 = 10.0
        rms = poynting(FieldSample.plane_wave([e0 / math.sqrt(2), 0, 0], [0, 0, 1]))
        peak = poynting(FieldSample.plane_wave([e0, 0, 0], [0, 0, 1], amplitude="peak"))
        assert peak.pd == pytest.approx(rms.pd, rel=1e-14)

    def test_projection(self):
        s = FieldSample.plane_wave([1.0, 0, 0], [0, 0, 1])
        assert poynting(s, direction=[0, 1, 1]).pd == pytest.approx(
            poynting(s).pd / math.sqrt(2), rel=1e-14)

    def test_nonfinite_rejected(self):
        with pytest.raises(InvalidParameter):
            FieldSample([np.nan, 0, 0], [0, 0, 0])


class TestFieldForm:
    def test_zero(self):
        assert pd_from_field(0.0) == 0.0
        assert field_from_pd(0.0) == 0.0

    def test_one_w_per_m2(self):
        assert pd_from_field(19.41) == pytest.approx(1.000, abs=5e-4)
        assert field_from_pd(1.0) == pytest.approx(19.40953373989185, rel=1e-12)

    def test_one_volt_per_metre(self):
        assert pd_from_field(1.0) == pytest.approx(2.654420938072360e-3, rel=1e-12)

    @given(st.one_of(st.just(0.0), st.floats(1e-100, 1e4)))
    def test_round_trip(self, x):
        assert field_from_pd(pd_from_field(x)) == pytest.approx(x, rel=1e-12, abs=1e-300)

    @pytest.mark.parametrize("bad", [-1.0, float("nan"), float("inf")])
    def test_invalid(self, bad):
        with pytest.raises(InvalidParameter):
            pd_from_field(bad)
        with pytest.raises(InvalidParameter):
            field_from_pd(bad)


class TestLinkBudget:
    def test_constants_cancel(self):
        src = RadioSource((0, 0), 4 * math.pi, 28e9)
        assert pd_link_budget(src, 1.0, 0.3) == pytest.approx(1.0, rel=1e-15)
        assert pd_link_budget(src, 2.0, 0.3) == pytest.approx(0.25, rel=1e-15)

    def test_calibration_eirp(self):
        # P_T G_T = 0.131 W at 10 cm
        assert pd_isotropic(0.131, 0.1) == pytest.approx(0.131 / (4 * math.pi * 0.01), rel=1e-15)
        assert pd_isotropic(0.131, 0.1) == pytest.approx(1.04, rel=0.01)

    @pytest.mark.parametrize("d", [0.0, -1.0])
    def test_zero_distance(self, d):
        with pytest.raises(ZeroDistance):
            pd_link_budget(RadioSource((0, 0), 1.0, 1e9), d, 0.0)

    def test_isotropic_is_angle_independent(self):
        src = RadioSource((0, 0), 3.0, 1e9)
        vals = [pd_link_budget(src, 2.5, phi) for phi in np.linspace(-math.pi, math.pi, 100)]
        assert max(vals) - min(vals) == 0

    def test_duty_factor_scales(self):
        a = RadioSource((0, 0), 3.0, 1e9, duty_factor=1.0)
        b = RadioSource((0, 0), 3.0, 1e9, duty_factor=0.25)
        assert pd_link_budget(b, 2.0, 0.0) == pytest.approx(0.25 * pd_link_budget(a, 2.0, 0.0), rel=1e-15)

    @pytest.mark.parametrize("kw", [dict(power_w=0.0), dict(frequency_hz=-1.0), dict(duty_factor=0.0),
                                    dict(duty_factor=1.5)])
    def test_source_invariants(self, kw):
        base = dict(position=(0, 0), power_w=1.0, frequency_hz=1e9)
        base.update(kw)
        with pytest.raises(InvalidParameter):
            RadioSource(**base)


class TestPatterns:
    def test_steered_formula(self):
        g = SteeredBeam(steer_rad=0.0, exponent=4.0, peak_gain=10.0)
        assert g.gain(0.0) == pytest.approx(10.0 + SIDELOBE_FLOOR)
        assert g.gain(math.pi / 3) == pytest.approx(10.0 * 0.5 ** 4 + SIDELOBE_FLOOR)
        assert g.gain(math.pi) == SIDELOBE_FLOOR

    def test_sector_half_power_at_half_beamwidth_edge(self):
        g = Sector(boresight_rad=1.0, half_power_beamwidth_rad=0.6, peak_gain=20.0)
        # 12 (0.5)^2 = 3 dB down at +/- half the beamwidth
        assert g.gain(1.3) == pytest.approx(20.0 * 10 ** -0.3, rel=1e-12)
        assert g.gain(1.0 + math.pi) == pytest.approx(20.0 * 1e-3, rel=1e-12)

    @given(st.floats(-10.0, 10.0))
    def test_gain_positive_and_peak_at_boresight(self, phi):
        for g in (Isotropic(), Sector(0.4, 1.0, 8.0), SteeredBeam(0.4, 16.0, 50.0)):
            assert g.gain(phi) > 0
            assert g.gain(phi) <= g.gain(0.4) + 1e-12

    def test_pointing(self):
        g = point_pattern(SteeredBeam(0.0, 8.0, 10.0), 3 * math.pi)
        assert g.steer_rad == pytest.approx(-math.pi)
        with pytest.raises(NotSteerable):
            point_pattern(Isotropic(), 1.0)

    def test_eirp(self):
        assert RadioSource((0, 0), 2.0, 1e9, SteeredBeam(0, 4, 50.0)).eirp_w == 100.0
