"""Reading and writing the TOML fixture formats.

Tissue tables, limit profiles, scenarios and generation-comparison configs
all live in TOML. Validation errors name the offending key and the line it
sits on, so a typo in a physics-critical field is easy to find.
"""

from __future__ import annotations

import hashlib
import math
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Union

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import tomli_w

from . import compliance as cmp
from .errors import DosimetryError, FixtureError
from .propagation import Isotropic, RadioSource, Sector, SteeredBeam
from .scenario import Grid, Point, Scenario
from .tissue import TissueProfile, TissueRow

PathLike = Union[str, Path]

DATA = resources.files("skinsar") / "data"


class _Source:
    """Raw text of one fixture, used to map keys back to line numbers."""

    def __init__(self, path: PathLike, text: str):
        self.path = str(path)
        self.lines = text.splitlines()

    def line_of(self, key: str, table: Optional[str] = None, index: int = 0) -> Optional[int]:
        """1-based line of ``key`` in the ``index``-th ``[[table]]`` (or ``[table]``)."""
        key_re = re.compile(rf"^\s*{re.escape(key)}\s*=")
        if table is None:
            for n, line in enumerate(self.lines, 1):
                if line.lstrip().startswith("["):
                    return None
                if key_re.match(line):
                    return n
            return None
        head_re = re.compile(rf"^\s*\[\[?\s*{re.escape(table)}\s*\]\]?\s*(#.*)?$")
        count = -1
        inside = False
        for n, line in enumerate(self.lines, 1):
            stripped = line.strip()
            if head_re.match(line):
                count += 1
                inside = count == index
                continue
            if stripped.startswith("["):
                inside = False
                continue
            if inside and key_re.match(line):
                return n
        return None

    def error(self, msg: str, key: str, table: Optional[str] = None, index: int = 0) -> FixtureError:
        line = self.line_of(key, table, index)
        where = f"{self.path}:{line}" if line else self.path
        return FixtureError(f"{where}: key '{key}': {msg}")


def _read(path: PathLike) -> tuple[dict, _Source]:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise FixtureError(f"{p}: cannot read: {exc.strerror or exc}") from exc
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise FixtureError(f"{p}: TOML syntax error: {exc}") from exc
    return data, _Source(p, text)


def checksum(path: PathLike) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


class _Table:
    """Strict accessor over one TOML table."""

    def __init__(self, data: dict, src: _Source, table: Optional[str] = None, index: int = 0):
        self.data, self.src, self.table, self.index = data, src, table, index
        self.used: set[str] = set()

    def err(self, key, msg):
        return self.src.error(msg, key, self.table, self.index)

    def _get(self, key, required):
        self.used.add(key)
        if key not in self.data:
            if required:
                where = f"[{self.table}] #{self.index + 1}" if self.table else "top level"
                raise FixtureError(f"{self.src.path}: key '{key}': missing in {where}")
            return None
        return self.data[key]

    def number(self, key, required=True, positive=False, nonneg=False, default=None):
        v = self._get(key, required)
        if v is None:
            return default
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise self.err(key, f"expected a number, got {type(v).__name__}")
        v = float(v)
        if not math.isfinite(v):
            raise self.err(key, "must be finite")
        if positive and v <= 0:
            raise self.err(key, f"must be positive, got {v:g}")
        if nonneg and v < 0:
            raise self.err(key, f"must be >= 0, got {v:g}")
        return v

    def string(self, key, required=True, default=None):
        v = self._get(key, required)
        if v is None:
            return default
        if not isinstance(v, str):
            raise self.err(key, f"expected a string, got {type(v).__name__}")
        return v

    def raw(self, key, required=False):
        return self._get(key, required)

    def strict(self, allowed_subtables=()):
        for key in self.data:
            if key not in self.used and key not in allowed_subtables:
                raise self.err(key, "unknown key")


# --- tissue ----------------------------------------------------------------

def load_tissue(path: PathLike) -> TissueProfile:
    data, src = _read(path)
    top = _Table(data, src)
    tissue = top.raw("tissue", required=True)
    top.strict()
    if not isinstance(tissue, dict):
        raise src.error("expected a [tissue] table", "tissue")
    t = _Table(tissue, src, "tissue")
    name = t.string("name")
    rows_raw = t.raw("row", required=True)
    t.strict()
    if not isinstance(rows_raw, list) or not rows_raw:
        raise src.error("expected at least one [[tissue.row]]", "row", "tissue")
    rows = []
    for i, r in enumerate(rows_raw):
        rt = _Table(r, src, "tissue.row", i)
        vals = dict(
            frequency_hz=rt.number("frequency_hz", positive=True),
            eps_real=rt.number("eps_real"),
            conductivity=rt.number("sigma_s_per_m", nonneg=True),
            mass_density=rt.number("density_kg_per_m3", positive=True),
            penetration_depth_override=rt.number("delta_m", required=False, positive=True),
            reflection_override=rt.number("reflection", required=False, positive=True),
        )
        rt.strict()
        if vals["eps_real"] < 1:
            raise rt.err("eps_real", "must be >= 1")
        if vals["reflection_override"] is not None and vals["reflection_override"] >= 1:
            raise rt.err("reflection", "must be < 1")
        if rows and vals["frequency_hz"] <= rows[-1].frequency_hz:
            raise rt.err("frequency_hz", "rows must be strictly increasing in frequency")
        rows.append(TissueRow(**vals))
    return TissueProfile(name, tuple(rows))


def tissue_path(name: str) -> Path:
    p = DATA / "tissues" / f"{name}.toml"
    if not p.is_file():
        known = sorted(x.name[:-5] for x in (DATA / "tissues").iterdir() if x.name.endswith(".toml"))
        raise FixtureError(f"unknown tissue {name!r}; shipped tissues: {', '.join(known)}")
    return Path(str(p))


def builtin_tissue(name: str) -> TissueProfile:
    return load_tissue(tissue_path(name))


# --- limit profiles ---------------------------------------------------------

def load_limits(path: PathLike) -> cmp.LimitProfile:
    data, src = _read(path)
    top = _Table(data, src)
    name = top.string("name", required=False, default=Path(path).stem)
    mass = top.number("sar_averaging_mass_g", required=False, positive=True)
    provenance = top.string("provenance", required=False, default="")
    rules_raw = top.raw("rule", required=True)
    top.strict()
    if not isinstance(rules_raw, list) or not rules_raw:
        raise src.error("expected at least one [[rule]]", "rule")
    rules = []
    for i, r in enumerate(rules_raw):
        rt = _Table(r, src, "rule", i)
        f_min = rt.number("f_min_hz", nonneg=True)
        f_max = rt.number("f_max_hz", positive=True)
        metric = rt.string("metric")
        limit = rt.number("limit", positive=True)
        population = rt.string("population", required=False, default="general")
        label = rt.string("label", required=False, default="")
        rt.strict()
        if metric not in ("sar", "pd"):
            raise rt.err("metric", f"must be \"sar\" or \"pd\", got {metric!r}")
        if f_max <= f_min:
            raise rt.err("f_max_hz", "must exceed f_min_hz")
        rule = cmp.LimitRule(f_min, f_max, cmp.Metric(metric), limit, population,
                             label or f"rule #{i + 1}")
        for j, other in enumerate(rules):
            if (other.population == rule.population and other.f_min < rule.f_max
                    and rule.f_min < other.f_max):
                line_a = src.line_of("f_min_hz", "rule", j)
                line_b = src.line_of("f_min_hz", "rule", i)
                raise FixtureError(
                    f"{src.path}: overlapping rules: {other.describe()} (line {line_a}) "
                    f"and {rule.describe()} (line {line_b})")
        rules.append(rule)
    return cmp.LimitProfile(name, tuple(rules), mass, provenance)


def limits_path(name: str) -> Path:
    p = DATA / "limits" / f"{name}.toml"
    if not p.is_file():
        known = sorted(x.name[:-5] for x in (DATA / "limits").iterdir() if x.name.endswith(".toml"))
        raise FixtureError(f"unknown limit profile {name!r}; shipped profiles: {', '.join(known)}")
    return Path(str(p))


def _resolve(ref: str, base: Path, finder) -> Path:
    """A reference is a path (relative to the referring file) or a shipped name."""
    if ref.endswith(".toml") or "/" in ref:
        p = Path(ref)
        return p if p.is_absolute() else base.parent / p
    return finder(ref)


# --- scenarios ----------------------------------------------------------------

_PATTERNS = {
    "isotropic": (Isotropic, ()),
    "sector": (Sector, ("boresight_rad", "half_power_beamwidth_rad", "peak_gain")),
    "steered": (SteeredBeam, ("steer_rad", "exponent", "peak_gain")),
}


def _pattern(raw, src: _Source, index: int):
    if raw is None:
        return Isotropic()
    if not isinstance(raw, dict):
        raise src.error("expected a table", "pattern", "source", index)
    pt = _Table(raw, src, "source.pattern", index)
    kind = pt.string("kind")
    if kind not in _PATTERNS:
        raise pt.err("kind", f"must be one of {', '.join(_PATTERNS)}, got {kind!r}")
    cls, fields = _PATTERNS[kind]
    args = [pt.number(k, positive=(k != "boresight_rad" and k != "steer_rad")) for k in fields]
    pt.strict()
    return cls(*args)


@dataclass
class ScenarioFile:
    scenario: Scenario
    path: Path
    inputs: dict[str, Path]  # role -> resolved path of every file read


def load_scenario(path: PathLike, tissue_override: Optional[PathLike] = None,
                  limits_override: Optional[PathLike] = None) -> ScenarioFile:
    path = Path(path)
    data, src = _read(path)
    top = _Table(data, src)
    tissue_ref = top.string("tissue")
    limits_ref = top.string("limits")
    authority = top.string("authority", required=False, default="ICNIRP")
    population = top.string("population", required=False, default="general")
    sources_raw = top.raw("source", required=True)
    grid_raw = top.raw("grid")
    point_raw = top.raw("point")
    top.strict()
    if authority not in ("ICNIRP", "FCC"):
        raise src.error(f"must be \"ICNIRP\" or \"FCC\", got {authority!r}", "authority")
    if not isinstance(sources_raw, list) or not sources_raw:
        raise src.error("expected at least one [[source]]", "source")
    if (grid_raw is None) == (point_raw is None):
        raise FixtureError(f"{path}: exactly one of [grid] or [point] is required")

    sources = []
    for i, s in enumerate(sources_raw):
        st = _Table(s, src, "source", i)
        pos = st.raw("position", required=True)
        if (not isinstance(pos, list) or len(pos) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pos)):
            raise st.err("position", "expected [x, y] in metres")
        power = st.number("power_w", required=False, positive=True)
        eirp = st.number("eirp_w", required=False, positive=True)
        freq = st.number("frequency_hz", positive=True)
        duty = st.number("duty_factor", required=False, positive=True, default=1.0)
        pattern = _pattern(st.raw("pattern"), src, i)
        st.strict()
        if (power is None) == (eirp is None):
            raise st.err("power_w" if power is not None else "eirp_w",
                         "give exactly one of power_w or eirp_w")
        if duty > 1:
            raise st.err("duty_factor", "must lie in (0, 1]")
        if power is None:
            power = eirp / pattern.peak_gain
        sources.append(RadioSource(tuple(pos), power, freq, pattern, duty))

    if grid_raw is not None:
        gt = _Table(grid_raw, src, "grid")
        ev = Grid(gt.number("x_min"), gt.number("x_max"), gt.number("y_min"),
                  gt.number("y_max"), gt.number("step", positive=True))
        gt.strict()
        if ev.x_max < ev.x_min:
            raise gt.err("x_max", "must be >= x_min")
        if ev.y_max < ev.y_min:
            raise gt.err("y_max", "must be >= y_min")
    else:
        pt = _Table(point_raw, src, "point")
        ev = Point(pt.number("x"), pt.number("y"))
        pt.strict()

    tissue_file = Path(tissue_override) if tissue_override else _resolve(tissue_ref, path, tissue_path)
    limits_file = Path(limits_override) if limits_override else _resolve(limits_ref, path, limits_path)
    scn = Scenario(tuple(sources), load_tissue(tissue_file), load_limits(limits_file),
                   cmp.Authority(authority), ev, population)
    return ScenarioFile(scn, path, {"scenario": path, "tissue": tissue_file, "limits": limits_file})


def _pattern_table(pattern) -> Optional[dict]:
    if isinstance(pattern, Isotropic):
        return None
    if isinstance(pattern, Sector):
        return {"kind": "sector", "boresight_rad": pattern.boresight_rad,
                "half_power_beamwidth_rad": pattern.half_power_beamwidth_rad,
                "peak_gain": pattern.peak_gain}
    return {"kind": "steered", "steer_rad": pattern.steer_rad,
            "exponent": pattern.exponent, "peak_gain": pattern.peak_gain}


def dump_scenario(scn: Scenario, tissue_ref: str, limits_ref: str) -> str:
    """Serialise a scenario back to the scenario TOML format."""
    doc: dict[str, Any] = {
        "tissue": tissue_ref,
        "limits": limits_ref,
        "authority": scn.authority.value,
    }
    if scn.population != "general":
        doc["population"] = scn.population
    sources = []
    for s in scn.sources:
        entry: dict[str, Any] = {
            "position": list(s.position),
            "power_w": s.power_w,
            "frequency_hz": s.frequency_hz,
            "duty_factor": s.duty_factor,
        }
        pattern = _pattern_table(s.gain)
        if pattern:
            entry["pattern"] = pattern
        sources.append(entry)
    doc["source"] = sources
    ev = scn.evaluation
    if isinstance(ev, Grid):
        doc["grid"] = {"x_min": ev.x_min, "x_max": ev.x_max, "y_min": ev.y_min,
                       "y_max": ev.y_max, "step": ev.step}
    elif isinstance(ev, Point):
        doc["point"] = {"x": ev.x, "y": ev.y}
    return tomli_w.dumps(doc)


# --- generation comparison ------------------------------------------------------

@dataclass(frozen=True)
class Generation:
    name: str
    frequency_hz: float
    eirp_w: float
    distance_m: float
    tissue: str


def load_compare(path: PathLike) -> list[Generation]:
    data, src = _read(path)
    top = _Table(data, src)
    gens_raw = top.raw("generation")
    top.strict()
    if not gens_raw:
        raise DosimetryError("no generations configured")
    if not isinstance(gens_raw, list):
        raise src.error("expected [[generation]] entries", "generation")
    out = []
    for i, g in enumerate(gens_raw):
        gt = _Table(g, src, "generation", i)
        out.append(Generation(
            gt.string("name"),
            gt.number("frequency_hz", positive=True),
            gt.number("eirp_w", nonneg=True),
            gt.number("distance_m", positive=True),
            gt.string("tissue"),
        ))
        gt.strict()
    return out
