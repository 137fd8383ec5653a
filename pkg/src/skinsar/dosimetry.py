"""Local SAR, surface SAR at the air-skin boundary, and its depth profile."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter


def local_sar(conductivity: float, e_magnitude_rms: float, mass_density: float) -> float:
    """Point SAR sigma |E|^2 / rho in W/kg (E is the RMS field inside tissue)."""
    if not (math.isfinite(mass_density) and mass_density > 0):
        raise InvalidParameter("mass_density must be positive")
    if not (math.isfinite(conductivity) and conductivity >= 0):
        raise InvalidParameter("conductivity must be >= 0")
    if not (math.isfinite(e_magnitude_rms) and e_magnitude_rms >= 0):
        raise InvalidParameter("field magnitude must be >= 0")
    return conductivity * e_magnitude_rms ** 2 / mass_density


def _surface_value(pd, r, delta, rho):
    return 2.0 * pd * (1.0 - r * r) / (delta * rho)


@dataclass(frozen=True)
class SurfaceExposure:
    pd_incident: float  # W/m^2
    reflection: float
    delta: float  # m, E-field 1/e depth
    mass_density: float  # kg/m^3
    sar_surface: float = float("nan")  # W/kg, always recomputed

    def __post_init__(self):
        vals = (self.pd_incident, self.reflection, self.delta, self.mass_density)
        if not all(math.isfinite(v) for v in vals):
            raise InvalidParameter("surface exposure fields must be finite")
        if self.pd_incident < 0:
            raise InvalidParameter("incident power density must be >= 0")
        if not 0 <= self.reflection < 1:
            raise InvalidParameter(f"reflection must lie in [0, 1), got {self.reflection!r}")
        if self.delta <= 0:
            raise InvalidParameter("penetration depth must be positive")
        if self.mass_density <= 0:
            raise InvalidParameter("mass density must be positive")
        sar = _surface_value(self.pd_incident, self.reflection, self.delta, self.mass_density)
        object.__setattr__(self, "sar_surface", sar)


def surface_sar(pd: float, r: float, delta: float, mass_density: float) -> SurfaceExposure:
    """SAR at the air-skin boundary, 2 PD (1 - R^2) / (delta rho).

    R close to 1 is legal and simply drives the SAR towards zero.
    """
    return SurfaceExposure(float(pd), float(r), float(delta), float(mass_density))


def sar_depth_profile(exposure: SurfaceExposure, z):
    """SAR at depth ``z`` (m, scalar or array): sar_surface * exp(-2 z / delta)."""
    z_arr = np.asarray(z, dtype=float)
    if np.any(z_arr < 0) or not np.all(np.isfinite(z_arr)):
        raise InvalidParameter("depth must be finite and >= 0")
    out = exposure.sar_surface * np.exp(-2.0 * z_arr / exposure.delta)
    return float(out) if out.ndim == 0 else out


def absorbed_power_per_area(exposure: SurfaceExposure) -> float:
    """Power absorbed per unit skin area, the depth integral of rho * SAR(z).

    rho * sar_surface * delta / 2 simplifies to PD (1 - R^2); the simplified
    form is returned so the identity holds bit for bit.
    """
    return exposure.pd_incident * (1.0 - exposure.reflection ** 2)


def invert_surface_sar(sar: float, r: float, delta: float, mass_density: float) -> float:
    """Incident power density that yields surface SAR ``sar``."""
    if not 0 <= r < 1:
        raise InvalidParameter("reflection must lie in [0, 1)")
    return sar * delta * mass_density / (2.0 * (1.0 - r * r))
