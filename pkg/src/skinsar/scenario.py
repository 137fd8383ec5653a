"""Deployments of sources evaluated on skin: points, grids and mitigation.

Power densities of distinct sources add incoherently. Surface SAR is
computed per source with the tissue parameters at that source's frequency
and then summed. Compliance uses the most restrictive rule among the
frequencies present.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Union

import numpy as np

from . import compliance as cmp
from .errors import EmptyGrid, InvalidParameter, SourceCollocation
from .propagation import RadioSource, _pd_array, point_pattern, wavelength, wrap_angle
from .tissue import SkinParameters, TissueProfile, skin_parameters

ROWS_PER_CHUNK = 8


@dataclass(frozen=True)
class Point:
    x: float
    y: float


@dataclass(frozen=True)
class Grid:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    step: float

    def __post_init__(self):
        if not (math.isfinite(self.step) and self.step > 0):
            raise InvalidParameter("grid step must be positive")

    def axis(self, lo: float, hi: float) -> np.ndarray:
        if hi < lo:
            return np.empty(0)
        n = int(math.floor((hi - lo) / self.step + 1e-9)) + 1
        return lo + self.step * np.arange(n)

    @property
    def xs(self) -> np.ndarray:
        return self.axis(self.x_min, self.x_max)

    @property
    def ys(self) -> np.ndarray:
        return self.axis(self.y_min, self.y_max)


@dataclass(frozen=True)
class Scenario:
    sources: tuple[RadioSource, ...]
    tissue: TissueProfile
    limit: cmp.LimitProfile
    authority: cmp.Authority = cmp.Authority.ICNIRP
    evaluation: Union[Point, Grid, None] = None
    population: str = "general"

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(self.sources))
        object.__setattr__(self, "authority", cmp.Authority(self.authority))
        if not self.sources:
            raise InvalidParameter("scenario needs at least one source")

    @property
    def frequencies(self) -> list[float]:
        return sorted({s.frequency_hz for s in self.sources})

    def scaled(self, factor: float) -> "Scenario":
        """Same scenario with every source power multiplied by ``factor``."""
        return replace(self, sources=tuple(s.scaled(factor) for s in self.sources))

    def with_source(self, index: int, source: RadioSource) -> "Scenario":
        sources = list(self.sources)
        sources[index] = source
        return replace(self, sources=tuple(sources))


@dataclass(frozen=True)
class ExposureSample:
    point: tuple[float, float]
    pd_total: float  # W/m^2
    sar_surface: float  # W/kg
    dominant_source: int
    compliance: Optional[cmp.ComplianceResult] = None


def _skin_table(scn: Scenario) -> dict[float, SkinParameters]:
    return {f: skin_parameters(scn.tissue, f) for f in scn.frequencies}


def _evaluate(scn: Scenario, xs: np.ndarray, ys: np.ndarray, skin):
    """Vectorised core shared by point and grid evaluation.

    Returns per-point (pd_total, sar_total, dominant index, collocated mask).
    """
    n = xs.shape[0]
    pd_each = np.empty((len(scn.sources), n))
    sar_total = np.zeros(n)
    collocated = np.zeros(n, dtype=bool)
    for k, src in enumerate(scn.sources):
        dx = xs - src.position[0]
        dy = ys - src.position[1]
        d = np.hypot(dx, dy)
        hit = d == 0
        collocated |= hit
        d = np.where(hit, 1.0, d)
        phi = np.arctan2(dy, dx)
        pd = _pd_array(src, d, phi)
        pd_each[k] = pd
        p = skin[src.frequency_hz]
        sar_total += 2.0 * pd * (1.0 - p.reflection * p.reflection) / (
            p.penetration_depth * p.mass_density)
    pd_total = np.zeros(n)
    for k in range(len(scn.sources)):
        pd_total += pd_each[k]
    dominant = np.argmax(pd_each, axis=0)
    return pd_total, sar_total, dominant, collocated


def _samples(scn, xs, ys, pd_total, sar_total, dominant, collocated):
    # same verdict as cmp.check_worst, with the rule lookup hoisted out of the loop
    rules = [(f, scn.limit.rule_for(f, scn.population)) for f in scn.frequencies]
    out = []
    for i in range(xs.shape[0]):
        if collocated[i]:
            continue
        pd, sar = float(pd_total[i]), float(sar_total[i])
        worst = None
        for f, rule in rules:
            res = cmp._result(rule, sar if rule.metric is cmp.Metric.SAR else pd, f)
            if worst is None or res.margin_db < worst.margin_db:
                worst = res
        out.append(ExposureSample((float(xs[i]), float(ys[i])), pd, sar,
                                  int(dominant[i]), worst))
    return out


def evaluate_point(scn: Scenario, p) -> ExposureSample:
    """Exposure, surface SAR and compliance at one plan-view point."""
    x, y = (p.x, p.y) if isinstance(p, Point) else p
    xs = np.array([float(x)])
    ys = np.array([float(y)])
    pd, sar, dom, coll = _evaluate(scn, xs, ys, _skin_table(scn))
    if coll[0]:
        raise SourceCollocation(f"point ({x}, {y}) coincides with a source")
    return _samples(scn, xs, ys, pd, sar, dom, coll)[0]


def exposure_map(scn: Scenario, grid: Optional[Grid] = None,
                 workers: Optional[int] = None) -> list[ExposureSample]:
    """Evaluate every grid point, row-major (y outer, x inner).

    Rows are processed in fixed-size chunks, optionally on a thread pool;
    the output does not depend on ``workers``. Grid points that coincide
    with a source are skipped with a warning.
    """
    grid = grid or scn.evaluation
    if not isinstance(grid, Grid):
        raise InvalidParameter("scenario has no grid evaluation")
    gx, gy = grid.xs, grid.ys
    if gx.size == 0 or gy.size == 0:
        raise EmptyGrid("grid bounds produce no points")
    skin = _skin_table(scn)

    def run(rows: np.ndarray):
        xs = np.tile(gx, rows.size)
        ys = np.repeat(rows, gx.size)
        pd, sar, dom, coll = _evaluate(scn, xs, ys, skin)
        return _samples(scn, xs, ys, pd, sar, dom, coll), int(coll.sum())

    chunks = [gy[i:i + ROWS_PER_CHUNK] for i in range(0, gy.size, ROWS_PER_CHUNK)]
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, chunks))
    else:
        parts = [run(c) for c in chunks]
    samples = [s for part, _ in parts for s in part]
    skipped = sum(n for _, n in parts)
    if skipped:
        warnings.warn(f"{skipped} grid point(s) coincide with a source and were skipped",
                      stacklevel=2)
    if not samples:
        raise EmptyGrid("every grid point coincides with a source")
    return samples


def power_control(scn: Scenario, protected) -> float:
    """Largest uniform power scale s in (0, 1] keeping ``protected`` compliant.

    Every metric is linear in transmit power, so s = limit / measured for the
    binding rule. The result is nudged down by ulps if rounding in the
    re-evaluation would otherwise land just above the limit.
    """
    sample = evaluate_point(scn, protected)
    results = [cmp.check(sample, scn.limit, f, scn.population) for f in scn.frequencies]
    s = 1.0
    for r in results:
        if r.measured > r.limit:
            s = min(s, r.limit / r.measured)
    if s == 1.0:
        return s
    while not evaluate_point(scn.scaled(s), protected).compliance.compliant:
        s = float(np.nextafter(s, 0.0))
    return s


def _bearing(src: RadioSource, p) -> float:
    x, y = (p.x, p.y) if isinstance(p, Point) else p
    return math.atan2(y - src.position[1], x - src.position[0])


def steer_away(scn: Scenario, source_index: int, protected) -> Scenario:
    """Point the indexed source's beam directly away from ``protected``."""
    src = scn.sources[source_index]
    away = float(wrap_angle(_bearing(src, protected) + math.pi))
    gain = point_pattern(src.gain, away)
    return scn.with_source(source_index, replace(src, gain=gain))


def near_field_advisories(scn: Scenario, points: Sequence, factor: float = 10.0) -> list[str]:
    """Messages for evaluation points closer than ``factor`` wavelengths to a source."""
    notes = []
    for k, src in enumerate(scn.sources):
        lam = wavelength(src.frequency_hz)
        for p in points:
            x, y = (p.x, p.y) if isinstance(p, Point) else p
            d = math.hypot(x - src.position[0], y - src.position[1])
            if 0 < d < factor * lam:
                notes.append(f"source {k}: point ({x:g}, {y:g}) is {d:g} m away, "
                             f"inside {factor:g} wavelengths; far-field PD may not apply")
    return notes
