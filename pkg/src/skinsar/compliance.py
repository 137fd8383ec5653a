"""Regulatory limit profiles, metric selection and band classification."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional

import numpy as np

from .errors import InvalidParameter, NoRuleForFrequency

MARGIN_CAP_DB = 300.0  # reported when the measured value is zero


class Metric(str, Enum):
    SAR = "sar"
    PD = "pd"

    @property
    def unit(self) -> str:
        return "W/kg" if self is Metric.SAR else "W/m^2"


class Authority(str, Enum):
    ICNIRP = "ICNIRP"
    FCC = "FCC"


# Highest frequency (inclusive) at which each authority still assesses SAR.
METRIC_SWITCH_HZ = {Authority.FCC: 6e9, Authority.ICNIRP: 10e9}


@dataclass(frozen=True)
class LimitRule:
    f_min: float
    f_max: float
    metric: Metric
    limit_value: float
    population: str = "general"
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "metric", Metric(self.metric))
        if not (0 <= self.f_min < self.f_max):
            raise InvalidParameter(f"rule {self.describe()}: need 0 <= f_min < f_max")
        if not (math.isfinite(self.limit_value) and self.limit_value > 0):
            raise InvalidParameter(f"rule {self.describe()}: limit must be positive")

    def covers(self, f: float) -> bool:
        return self.f_min <= f < self.f_max

    def describe(self) -> str:
        tag = f"{self.label} " if self.label else ""
        return f"{tag}[{self.f_min:g}, {self.f_max:g}) Hz {self.population}"


@dataclass(frozen=True)
class LimitProfile:
    name: str
    rules: tuple[LimitRule, ...]
    sar_averaging_mass_g: Optional[float] = None
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        for i, a in enumerate(self.rules):
            for b in self.rules[i + 1:]:
                if a.population == b.population and a.f_min < b.f_max and b.f_min < a.f_max:
                    raise InvalidParameter(
                        f"profile {self.name!r}: rules overlap: {a.describe()} and {b.describe()}"
                    )

    def rule_for(self, f: float, population: str = "general") -> LimitRule:
        for rule in self.rules:
            if rule.population == population and rule.covers(f):
                return rule
        raise NoRuleForFrequency(
            f"profile {self.name!r} has no {population} rule covering {f:g} Hz"
        )


class Band(str, Enum):
    LOW = "Low"
    MID = "Mid"
    HIGH = "High"


class FrequencyRange(str, Enum):
    FR1 = "FR1"
    FR2 = "FR2"
    NONE = "none"


@dataclass(frozen=True)
class BandClass:
    band: Band
    fr: FrequencyRange


def classify_band(f: float) -> BandClass:
    """5G band class: Low below 1 GHz, Mid up to and including 6 GHz, High above."""
    if not f > 0:
        raise InvalidParameter("frequency must be positive")
    if f < 1e9:
        band = Band.LOW
    elif f <= 6e9:
        band = Band.MID
    else:
        band = Band.HIGH
    if 450e6 <= f <= 6e9:
        fr = FrequencyRange.FR1
    elif 24.25e9 <= f <= 52.6e9:
        fr = FrequencyRange.FR2
    else:
        fr = FrequencyRange.NONE
    return BandClass(band, fr)


def select_metric(f: float, authority) -> Metric:
    """SAR at or below the authority's switch frequency, PD above it."""
    if not f > 0:
        raise InvalidParameter("frequency must be positive")
    return Metric.SAR if f <= METRIC_SWITCH_HZ[Authority(authority)] else Metric.PD


def margin_db(limit, measured):
    """10 log10(limit / measured), capped at MARGIN_CAP_DB (also for measured = 0)."""
    if np.ndim(limit) == 0 and np.ndim(measured) == 0:
        if measured == 0:
            return MARGIN_CAP_DB
        return min(10.0 * math.log10(limit / measured), MARGIN_CAP_DB)
    limit = np.asarray(limit, dtype=float)
    measured = np.asarray(measured, dtype=float)
    with np.errstate(divide="ignore"):
        m = 10.0 * np.log10(limit / measured)
    m = np.minimum(m, MARGIN_CAP_DB)
    return float(m) if m.ndim == 0 else m


@dataclass(frozen=True)
class ComplianceResult:
    metric_used: Metric
    measured: float
    limit: float
    margin_db: float
    compliant: bool
    frequency_hz: float = float("nan")
    rule: Optional[LimitRule] = field(default=None, compare=False)

    @property
    def unit(self) -> str:
        return self.metric_used.unit


def _measured(exposure, metric: Metric) -> float:
    return float(exposure.sar_surface if metric is Metric.SAR else exposure.pd_total)


def check(exposure, profile: LimitProfile, f: float, population: str = "general") -> ComplianceResult:
    """Compare an exposure against the rule of ``profile`` covering ``f``.

    ``exposure`` is anything with ``pd_total`` (W/m^2) and ``sar_surface``
    (W/kg) attributes. Equality with the limit counts as compliant.
    """
    rule = profile.rule_for(f, population)
    measured = _measured(exposure, rule.metric)
    return _result(rule, measured, f)


def _result(rule: LimitRule, measured: float, f: float) -> ComplianceResult:
    ok = bool(measured <= rule.limit_value)
    m = margin_db(rule.limit_value, measured)
    if ok:
        m = max(m, 0.0)
    elif m >= 0:
        # limit/measured rounded to 1; keep the sign consistent with the verdict
        m = -float(np.finfo(float).tiny)
    return ComplianceResult(rule.metric, measured, rule.limit_value, m, ok, f, rule)


def check_worst(exposure, profile: LimitProfile, frequencies: Iterable[float],
                population: str = "general") -> ComplianceResult:
    """Most restrictive result over every frequency present in a scenario.

    Ties keep the lowest frequency.
    """
    results = [check(exposure, profile, f, population) for f in sorted(set(frequencies))]
    if not results:
        raise InvalidParameter("no frequencies to check")
    return min(results, key=lambda r: r.margin_db)
