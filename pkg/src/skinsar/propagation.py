"""Incident power density: Poynting vector, plane-wave field form, link budget.

Field magnitudes are RMS unless stated otherwise, so that |E|^2 / eta0 is
the time-average power density without a factor of 1/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional, Union

import numpy as np

from .constants import FREE_SPACE_IMPEDANCE, SPEED_OF_LIGHT
from .errors import InvalidParameter, NotSteerable, ZeroDistance

SIDELOBE_FLOOR = 1e-3  # linear gain floor of SteeredBeam
SECTOR_FRONT_TO_BACK_DB = 30.0


def wrap_angle(phi):
    """Wrap angle(s) to [-pi, pi)."""
    return (np.asarray(phi) + np.pi) % (2 * np.pi) - np.pi


# --- gain patterns ---------------------------------------------------------


@dataclass(frozen=True)
class Isotropic:
    steerable = False

    @property
    def peak_gain(self) -> float:
        return 1.0

    def gain(self, phi, d=None):
        return np.ones_like(np.asarray(phi, dtype=float))


@dataclass(frozen=True)
class Sector:
    """Parabolic-in-dB sector beam with a 30 dB front-to-back floor."""

    boresight_rad: float
    half_power_beamwidth_rad: float
    peak_gain: float

    steerable = True

    def __post_init__(self):
        if not (self.half_power_beamwidth_rad > 0 and self.peak_gain > 0):
            raise InvalidParameter("sector beamwidth and peak gain must be positive")

    def gain(self, phi, d=None):
        off = wrap_angle(np.asarray(phi, dtype=float) - self.boresight_rad)
        atten_db = np.minimum(12.0 * (off / self.half_power_beamwidth_rad) ** 2,
                              SECTOR_FRONT_TO_BACK_DB)
        return self.peak_gain * 10.0 ** (-atten_db / 10.0)

    def pointed(self, angle: float) -> "Sector":
        return replace(self, boresight_rad=float(wrap_angle(angle)))


@dataclass(frozen=True)
class SteeredBeam:
    """G(phi) = peak * max(cos(phi - steer), 0)**n + 1e-3."""

    steer_rad: float
    exponent: float
    peak_gain: float

    steerable = True

    def __post_init__(self):
        if not (self.exponent > 0 and self.peak_gain > 0):
            raise InvalidParameter("beam exponent and peak gain must be positive")

    def gain(self, phi, d=None):
        c = np.maximum(np.cos(np.asarray(phi, dtype=float) - self.steer_rad), 0.0)
        return self.peak_gain * c ** self.exponent + SIDELOBE_FLOOR

    def pointed(self, angle: float) -> "SteeredBeam":
        return replace(self, steer_rad=float(wrap_angle(angle)))


GainPattern = Union[Isotropic, Sector, SteeredBeam]


def point_pattern(pattern: GainPattern, angle: float) -> GainPattern:
    if not pattern.steerable:
        raise NotSteerable(f"{type(pattern).__name__} pattern cannot be steered")
    return pattern.pointed(angle)


# --- sources and fields ----------------------------------------------------


@dataclass(frozen=True)
class RadioSource:
    position: tuple[float, float]
    power_w: float
    frequency_hz: float
    gain: GainPattern = field(default_factory=Isotropic)
    duty_factor: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "position", tuple(float(v) for v in self.position))
        if len(self.position) != 2:
            raise InvalidParameter("source position must be a 2-D point")
        if not (math.isfinite(self.power_w) and self.power_w > 0):
            raise InvalidParameter("power_w must be positive")
        if not (math.isfinite(self.frequency_hz) and self.frequency_hz > 0):
            raise InvalidParameter("frequency_hz must be positive")
        if not 0 < self.duty_factor <= 1:
            raise InvalidParameter("duty_factor must lie in (0, 1]")

    @property
    def eirp_w(self) -> float:
        return self.power_w * self.gain.peak_gain

    def scaled(self, factor: float) -> "RadioSource":
        return replace(self, power_w=self.power_w * factor)


@dataclass(frozen=True)
class FieldSample:
    """Complex E (V/m) and H (A/m) phasors at one point.

    ``amplitude`` says whether the phasors are RMS or peak values.
    """

    e_field: np.ndarray
    h_field: np.ndarray
    amplitude: str = "rms"

    def __post_init__(self):
        e = np.asarray(self.e_field, dtype=complex).reshape(3)
        h = np.asarray(self.h_field, dtype=complex).reshape(3)
        if not (np.all(np.isfinite(e)) and np.all(np.isfinite(h))):
            raise InvalidParameter("field components must be finite")
        if self.amplitude not in ("rms", "peak"):
            raise InvalidParameter("amplitude must be 'rms' or 'peak'")
        object.__setattr__(self, "e_field", e)
        object.__setattr__(self, "h_field", h)

    @classmethod
    def plane_wave(cls, e_field, direction, amplitude="rms") -> "FieldSample":
        """Far-field sample with H = r_hat x E / eta0."""
        r = np.asarray(direction, dtype=float)
        r = r / np.linalg.norm(r)
        e = np.asarray(e_field, dtype=complex)
        return cls(e, np.cross(r, e) / FREE_SPACE_IMPEDANCE, amplitude)


class PoyntingResult(NamedTuple):
    vector: np.ndarray  # complex S = E x H*
    pd: float  # time-average power density, W/m^2


def poynting(sample: FieldSample, direction=None) -> PoyntingResult:
    """Complex Poynting vector and time-average power density.

    The power density is Re(S) projected on ``direction`` (the direction of
    Re(S) itself when omitted), halved for peak phasors.
    """
    s = np.cross(sample.e_field, np.conj(sample.h_field))
    re = s.real
    if direction is None:
        flux = float(np.linalg.norm(re))
    else:
        u = np.asarray(direction, dtype=float)
        flux = abs(float(re @ (u / np.linalg.norm(u))))
    if sample.amplitude == "peak":
        flux *= 0.5
    return PoyntingResult(s, flux)


def pd_from_field(e_magnitude_rms: float) -> float:
    """Plane-wave power density |E|^2 / eta0 for an RMS field magnitude."""
    if not (math.isfinite(e_magnitude_rms) and e_magnitude_rms >= 0):
        raise InvalidParameter(f"field magnitude must be finite and >= 0, got {e_magnitude_rms!r}")
    return e_magnitude_rms ** 2 / FREE_SPACE_IMPEDANCE


def field_from_pd(pd: float) -> float:
    """RMS field magnitude carrying power density ``pd``."""
    if not (math.isfinite(pd) and pd >= 0):
        raise InvalidParameter(f"power density must be finite and >= 0, got {pd!r}")
    return math.sqrt(pd * FREE_SPACE_IMPEDANCE)


def pd_isotropic(eirp_w: float, d: float, duty_factor: float = 1.0) -> float:
    """Far-field power density of an EIRP at distance ``d``."""
    if not (math.isfinite(eirp_w) and eirp_w >= 0):
        raise InvalidParameter("EIRP must be finite and >= 0")
    if not d > 0:
        raise ZeroDistance(f"distance must be positive, got {d!r}; use the Poynting route in the near field")
    return duty_factor * eirp_w / (4 * math.pi * d * d)


def pd_link_budget(source: RadioSource, d: float, phi: float) -> float:
    """duty * P_T * G(phi) / (4 pi d^2)."""
    if not d > 0:
        raise ZeroDistance(f"distance must be positive, got {d!r}; use the Poynting route in the near field")
    return float(_pd_array(source, np.asarray(d, dtype=float), np.asarray(phi, dtype=float)))


def _pd_array(source: RadioSource, d: np.ndarray, phi: np.ndarray) -> np.ndarray:
    g = source.gain.gain(phi, d)
    return source.duty_factor * source.power_w * g / (4 * np.pi * d * d)


def wavelength(f: float) -> float:
    return SPEED_OF_LIGHT / f
