import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from skinsar.dosimetry import (SurfaceExposure, absorbed_power_per_area, invert_surface_sar,
                               local_sar, sar_depth_profile, surface_sar)
from skinsar.errors import InvalidParameter

trapezoid = getattr(np, "trapezoid", None) or np.trapz

exposures = st.builds(
    surface_sar,
    pd=st.one_of(st.just(0.0), st.floats(1e-100, 1e3)),
    r=st.floats(0.0, 0.999),
    delta=st.floats(1e-5, 0.1),
    mass_density=st.floats(500.0, 2000.0),
)


class TestLocalSar:
    def test_unit_inputs(self):
        assert local_sar(1.0, 1.0, 1.0) == 1.0

    def test_zero_field(self):
        assert local_sar(25.8, 0.0, 1000.0) == 0.0

    def test_skin_values(self):
        assert local_sar(25.8, 10.0, 1000.0) == pytest.approx(2.58, rel=1e-14)

    @pytest.mark.parametrize("rho", [0.0, -5.0])
    def test_bad_density(self, rho):
        with pytest.raises(InvalidParameter):
            local_sar(1.0, 1.0, rho)


class TestSurfaceSar:
    def test_total_reflection_limit(self):
        r = float(np.nextafter(1.0, 0.0))
        assert surface_sar(1.0, r, 1e-3, 1000.0).sar_surface < 1e-15

    def test_table_row(self):
        # 1.04 W/m^2, R = 0.68, delta = 0.9 mm, rho = 1 g/cm^3
        e = surface_sar(1.04, 0.68, 0.9e-3, 1000.0)
        assert e.sar_surface == pytest.approx(1.2424533333333333, rel=1e-12)
        assert e.sar_surface == pytest.approx(1.24, rel=0.005)

    def test_nominal_depth_and_density(self):
        assert surface_sar(1.0, 0.0, 1e-3, 1000.0).sar_surface == pytest.approx(2.0, rel=1e-15)

    @pytest.mark.parametrize("args", [(1.0, 1.0, 1e-3, 1000.0), (1.0, 0.5, 0.0, 1000.0),
                                      (1.0, 0.5, 1e-3, 0.0), (-1.0, 0.5, 1e-3, 1000.0),
                                      (1.0, -0.1, 1e-3, 1000.0)])
    def test_invalid(self, args):
        with pytest.raises(InvalidParameter):
            surface_sar(*args)

    def test_constructor_enforces_formula(self):
        e = SurfaceExposure(2.0, 0.5, 1e-3, 1000.0, sar_surface=123.0)
        assert e.sar_surface == pytest.approx(3.0, rel=1e-15)

    @given(exposures)
    def test_linear_in_pd(self, e):
        doubled = surface_sar(2 * e.pd_incident, e.reflection, e.delta, e.mass_density)
        assert doubled.sar_surface == pytest.approx(2 * e.sar_surface, rel=1e-12, abs=0)

    @given(pd=st.floats(1e-3, 1e3), delta=st.floats(1e-5, 0.1),
           rs=st.lists(st.integers(0, 999), min_size=2, max_size=6, unique=True))
    def test_decreasing_in_reflection(self, pd, delta, rs):
        sars = [surface_sar(pd, r / 1000, delta, 1000.0).sar_surface for r in sorted(rs)]
        assert all(b < a for a, b in zip(sars, sars[1:]))

    def test_inversion_round_trip(self):
        pd = invert_surface_sar(1.24, 0.6812, 0.92e-3, 1000.0)
        assert surface_sar(pd, 0.6812, 0.92e-3, 1000.0).sar_surface == pytest.approx(1.24, rel=1e-14)


class TestDepthProfile:
    def test_boundary_values(self):
        e = surface_sar(1.0, 0.68, 0.9e-3, 1000.0)
        assert sar_depth_profile(e, 0.0) == e.sar_surface
        assert sar_depth_profile(e, e.delta / 2) == pytest.approx(e.sar_surface / math.e, rel=1e-14)
        assert sar_depth_profile(e, 5 * e.delta) == pytest.approx(
            4.539992976248485e-05 * e.sar_surface, rel=1e-12)

    def test_negative_depth(self):
        with pytest.raises(InvalidParameter):
            sar_depth_profile(surface_sar(1.0, 0.5, 1e-3, 1000.0), -1e-6)

    @given(exposures, st.floats(0.0, 1.0), st.floats(1e-6, 1.0))
    def test_monotone(self, e, z, dz):
        if e.sar_surface > 0 and sar_depth_profile(e, z + dz) > 0:
            assert sar_depth_profile(e, z) > sar_depth_profile(e, z + dz)

    def test_array_input(self):
        e = surface_sar(1.0, 0.5, 1e-3, 1000.0)
        z = np.array([0.0, 1e-3, 2e-3])
        np.testing.assert_allclose(sar_depth_profile(e, z), e.sar_surface * np.exp(-2 * z / 1e-3))


class TestAbsorbedPower:
    def test_no_reflection(self):
        assert absorbed_power_per_area(surface_sar(1.0, 0.0, 1e-3, 1000.0)) == 1.0

    def test_skin_reflection(self):
        assert absorbed_power_per_area(surface_sar(1.0, 0.68, 1e-3, 1000.0)) == pytest.approx(0.5376, rel=1e-14)

    @given(exposures)
    def test_closed_form_identity(self, e):
        assert absorbed_power_per_area(e) == e.pd_incident * (1 - e.reflection ** 2)
        literal = e.mass_density * e.sar_surface * e.delta / 2
        assert literal == pytest.approx(absorbed_power_per_area(e), rel=1e-13, abs=0)

    @given(exposures)
    def test_quadrature(self, e):
        z = np.linspace(0.0, 40 * e.delta, 40 * 800 + 1)
        q = trapezoid(e.mass_density * sar_depth_profile(e, z), z)
        assert q == pytest.approx(absorbed_power_per_area(e), rel=1e-6, abs=0)
