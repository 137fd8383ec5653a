"""Tissue dielectric data and the boundary parameters derived from it.

A :class:`TissueProfile` is a frequency table of relative permittivity,
conductivity and mass density. The air-skin reflection coefficient and the
penetration depth are derived from the complex permittivity

    eps* = eps' - j sigma / (2 pi f eps0)

unless a table row overrides them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .constants import SPEED_OF_LIGHT, VACUUM_PERMITTIVITY
from .errors import FrequencyOutOfRange, InvalidParameter, LosslessMedium


@dataclass(frozen=True)
class TissueRow:
    frequency_hz: float
    eps_real: float
    conductivity: float  # S/m
    mass_density: float  # kg/m^3
    penetration_depth_override: Optional[float] = None  # m
    reflection_override: Optional[float] = None

    def __post_init__(self):
        for name in ("frequency_hz", "eps_real", "conductivity", "mass_density"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameter(f"{name} must be finite")
        if self.frequency_hz <= 0:
            raise InvalidParameter("frequency_hz must be positive")
        if self.eps_real < 1:
            raise InvalidParameter("eps_real must be >= 1")
        if self.conductivity < 0:
            raise InvalidParameter("conductivity must be >= 0")
        if self.mass_density <= 0:
            raise InvalidParameter("mass_density must be positive")
        delta = self.penetration_depth_override
        if delta is not None and not (math.isfinite(delta) and delta > 0):
            raise InvalidParameter("penetration_depth_override must be finite and positive")
        r = self.reflection_override
        if r is not None and not (math.isfinite(r) and 0 < r < 1):
            raise InvalidParameter("reflection_override must lie in (0, 1)")


@dataclass(frozen=True)
class TissueProfile:
    name: str
    rows: tuple[TissueRow, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if not self.rows:
            raise InvalidParameter(f"tissue {self.name!r} has no rows")
        freqs = [r.frequency_hz for r in self.rows]
        if any(b <= a for a, b in zip(freqs, freqs[1:])):
            raise InvalidParameter(
                f"tissue {self.name!r}: rows must be strictly increasing in frequency"
            )

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([r.frequency_hz for r in self.rows])

    @property
    def f_min(self) -> float:
        return self.rows[0].frequency_hz

    @property
    def f_max(self) -> float:
        return self.rows[-1].frequency_hz


@dataclass(frozen=True)
class SkinParameters:
    """Everything the surface-SAR formula needs at one frequency."""

    frequency_hz: float
    eps_real: float
    conductivity: float
    mass_density: float
    reflection: float
    penetration_depth: float


def _check_freq(profile: TissueProfile, f: float):
    if not (profile.f_min <= f <= profile.f_max):
        raise FrequencyOutOfRange(
            f"{f:g} Hz is outside the {profile.name!r} table "
            f"[{profile.f_min:g}, {profile.f_max:g}] Hz"
        )


def _bracket(profile: TissueProfile, f: float) -> tuple[int, int]:
    freqs = profile.frequencies
    hi = int(np.searchsorted(freqs, f, side="left"))
    if freqs[hi] == f:
        return hi, hi
    return hi - 1, hi


def _interp_log(f: float, f0: float, f1: float, v0: float, v1: float) -> float:
    t = (math.log10(f) - math.log10(f0)) / (math.log10(f1) - math.log10(f0))
    return v0 + t * (v1 - v0)


def lookup_tissue(profile: TissueProfile, f: float) -> tuple[float, float, float]:
    """Return ``(eps_real, conductivity, mass_density)`` at frequency ``f``.

    eps' and sigma are interpolated linearly in log10(f); density linearly
    in f. Row frequencies return the row values verbatim.
    """
    _check_freq(profile, f)
    lo, hi = _bracket(profile, f)
    if lo == hi:
        row = profile.rows[lo]
        return row.eps_real, row.conductivity, row.mass_density
    a, b = profile.rows[lo], profile.rows[hi]
    eps = _interp_log(f, a.frequency_hz, b.frequency_hz, a.eps_real, b.eps_real)
    sigma = _interp_log(f, a.frequency_hz, b.frequency_hz, a.conductivity, b.conductivity)
    t = (f - a.frequency_hz) / (b.frequency_hz - a.frequency_hz)
    rho = a.mass_density + t * (b.mass_density - a.mass_density)
    return eps, sigma, rho


def _validate_dielectric(eps_real, conductivity, f):
    for name, v in (("eps_real", eps_real), ("conductivity", conductivity), ("f", f)):
        if not math.isfinite(v):
            raise InvalidParameter(f"{name} must be finite, got {v!r}")
    if f <= 0:
        raise InvalidParameter("frequency must be positive")
    if eps_real < 1:
        raise InvalidParameter("eps_real must be >= 1")
    if conductivity < 0:
        raise InvalidParameter("conductivity must be >= 0")


def complex_permittivity(eps_real: float, conductivity: float, f: float) -> complex:
    return complex(eps_real, -conductivity / (2 * math.pi * f * VACUUM_PERMITTIVITY))


def reflection_coefficient(eps_real: float, conductivity: float, f: float) -> float:
    """Normal-incidence amplitude reflection coefficient at an air/tissue interface.

    R = |(1 - n) / (1 + n)| with complex refractive index n = sqrt(eps*).
    Power reflectance is R**2.
    """
    _validate_dielectric(eps_real, conductivity, f)
    n = np.sqrt(complex_permittivity(eps_real, conductivity, f))
    return float(abs((1 - n) / (1 + n)))


def penetration_depth(eps_real: float, conductivity: float, f: float) -> float:
    """E-field 1/e penetration depth in metres, ``1 / alpha``.

    alpha = (2 pi f / c) |Im sqrt(eps*)|. Power (and SAR) decays as
    exp(-2 z / delta).
    """
    _validate_dielectric(eps_real, conductivity, f)
    if conductivity == 0:
        raise LosslessMedium("penetration depth is unbounded for a lossless medium")
    n = np.sqrt(complex_permittivity(eps_real, conductivity, f))
    alpha = 2 * math.pi * f / SPEED_OF_LIGHT * abs(n.imag)
    return float(1.0 / alpha)


def _override(profile: TissueProfile, f: float, attr: str) -> Optional[float]:
    lo, hi = _bracket(profile, f)
    a, b = profile.rows[lo], profile.rows[hi]
    va, vb = getattr(a, attr), getattr(b, attr)
    if va is None or vb is None:
        return None
    if lo == hi:
        return va
    return _interp_log(f, a.frequency_hz, b.frequency_hz, va, vb)


def skin_parameters(profile: TissueProfile, f: float) -> SkinParameters:
    """Resolve every boundary parameter of ``profile`` at ``f``.

    Row overrides win over derived values. Between rows an override is only
    used when both bracketing rows carry one (it is then interpolated in
    log-frequency like the dielectric data).
    """
    eps, sigma, rho = lookup_tissue(profile, f)
    r = _override(profile, f, "reflection_override")
    if r is None:
        r = reflection_coefficient(eps, sigma, f)
    delta = _override(profile, f, "penetration_depth_override")
    if delta is None:
        delta = penetration_depth(eps, sigma, f)
    return SkinParameters(f, eps, sigma, rho, r, delta)


def subset(profile: TissueProfile, frequencies: Sequence[float], name: Optional[str] = None) -> TissueProfile:
    """Profile restricted to the rows at ``frequencies``."""
    wanted = set(frequencies)
    rows = [r for r in profile.rows if r.frequency_hz in wanted]
    if len(rows) != len(wanted):
        raise InvalidParameter("every requested frequency must be a table row")
    return TissueProfile(name or profile.name, tuple(rows))
