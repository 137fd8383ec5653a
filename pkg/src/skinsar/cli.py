"""Command-line front end.

Exit codes: 0 ok / compliant, 1 usage or input error, 2 non-compliant.
"""

from __future__ import annotations

import argparse
import math
import sys
import warnings
from pathlib import Path
from typing import Optional

import numpy as np

from . import compliance as cmp
from . import fixtures, report
from .dosimetry import absorbed_power_per_area, sar_depth_profile, surface_sar
from .errors import DosimetryError, FrequencyOutOfRange
from .propagation import field_from_pd, pd_from_field, pd_isotropic, wavelength
from .scenario import (Grid, Point, evaluate_point, exposure_map, near_field_advisories,
                       power_control, steer_away)
from .tissue import skin_parameters

EXIT_OK, EXIT_INPUT, EXIT_NONCOMPLIANT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _advise(msg: str) -> None:
    print(f"advisory: {msg}", file=sys.stderr)


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def _positive(args, *names):
    for n in names:
        v = getattr(args, n)
        if v is None or not (math.isfinite(v) and v > 0):
            raise UsageError(f"{_flag(n)}: must be a positive number, got {v!r}")


def _nonneg(args, *names):
    for n in names:
        v = getattr(args, n)
        if v is not None and not (math.isfinite(v) and v >= 0):
            raise UsageError(f"{_flag(n)}: must be >= 0, got {v!r}")


# --- shared option groups ------------------------------------------------------

def _add_outputs(p, svg=True):
    p.add_argument("--csv", type=Path, help="write CSV here instead of stdout")
    if svg:
        p.add_argument("--svg", type=Path, help="also write an SVG chart")
    p.add_argument("--manifest", type=Path,
                   help="run-manifest path (default: <first output>.manifest.json)")


def _add_tissue(p):
    p.add_argument("--tissue", default="dry-skin", help="shipped tissue name (default dry-skin)")
    p.add_argument("--tissue-file", type=Path, help="tissue TOML file (overrides --tissue)")


def _add_source(p, distance_required=True):
    p.add_argument("--eirp-w", type=float, help="EIRP, P_T * G_T (W)")
    p.add_argument("--power-w", type=float, help="transmit power (W), used with --gain")
    p.add_argument("--gain", type=float, default=1.0, help="linear antenna gain (default 1)")
    p.add_argument("--duty-factor", type=float, default=1.0, help="time-average duty factor (0, 1]")
    p.add_argument("--distance-m", type=float, required=distance_required, help="distance (m)")


def _tissue_file(args) -> Path:
    return args.tissue_file if args.tissue_file else fixtures.tissue_path(args.tissue)


def _eirp(args) -> Optional[float]:
    if args.eirp_w is not None and args.power_w is not None:
        raise UsageError("--eirp-w and --power-w are mutually exclusive")
    _nonneg(args, "eirp_w", "power_w")
    _positive(args, "gain")
    if not 0 < args.duty_factor <= 1:
        raise UsageError(f"--duty-factor: must lie in (0, 1], got {args.duty_factor!r}")
    if args.eirp_w is not None:
        return args.eirp_w
    if args.power_w is not None:
        return args.power_w * args.gain
    return None


def _skin(tissue, f):
    try:
        return skin_parameters(tissue, f)
    except FrequencyOutOfRange as exc:
        raise UsageError(f"--freq-hz: {exc}") from exc


def _near_field_check(f: float, d: float) -> None:
    lam = wavelength(f)
    if d < 10 * lam:
        _advise(f"distance {d:g} m is under 10 wavelengths ({10 * lam:g} m); "
                "far-field power density may not apply")


def _emit(command, args, text: str, inputs: dict, svg_text: Optional[str] = None,
          stdout: bool = True):
    """Write CSV (file or stdout), optional SVG, and the manifest sidecar."""
    outputs = []
    if args.csv:
        report.write_text(args.csv, text)
        outputs.append(args.csv)
    elif stdout:
        sys.stdout.write(text)
    svg_path = getattr(args, "svg", None)
    if svg_path and svg_text is not None:
        report.write_text(svg_path, svg_text)
        outputs.append(svg_path)
    if outputs or args.manifest:
        path = args.manifest or Path(str(outputs[0]) + ".manifest.json")
        argd = {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(vars(args).items())
                if k not in ("func", "csv", "svg", "manifest")}
        report.write_manifest(path, report.manifest(command, inputs, outputs, argd))


# --- subcommands ------------------------------------------------------------------

def cmd_sar(args) -> int:
    _positive(args, "freq_hz", "distance_m")
    eirp = _eirp(args)
    if eirp is None:
        raise UsageError("one of --eirp-w or --power-w is required")
    tfile = _tissue_file(args)
    tissue = fixtures.load_tissue(tfile)
    skin = _skin(tissue, args.freq_hz)
    pd = pd_isotropic(eirp, args.distance_m, args.duty_factor)
    exp = surface_sar(pd, skin.reflection, skin.penetration_depth, skin.mass_density)
    _near_field_check(args.freq_hz, args.distance_m)
    print(f"pd_w_per_m2 = {report.fmt(pd)}")
    print(f"reflection = {report.fmt(skin.reflection)}")
    print(f"delta_mm = {report.fmt(skin.penetration_depth * 1e3)}")
    print(f"sar_w_per_kg = {report.fmt(exp.sar_surface)}")
    text = report.csv_text(
        ["frequency_hz", "distance_m", "eirp_w", "pd_w_per_m2", "reflection", "delta_mm", "sar_w_per_kg"],
        [[args.freq_hz, args.distance_m, eirp, pd, skin.reflection,
          skin.penetration_depth * 1e3, exp.sar_surface]])
    _emit("sar", args, text, {"tissue": tfile}, stdout=False)
    return EXIT_OK


def cmd_pd(args) -> int:
    eirp = _eirp(args)
    routes = [eirp is not None, args.e_rms_v_per_m is not None, args.pd_w_per_m2 is not None]
    if sum(routes) != 1:
        raise UsageError("give exactly one of --eirp-w/--power-w, --e-rms-v-per-m, --pd-w-per-m2")
    if eirp is not None:
        if args.distance_m is None:
            raise UsageError("--distance-m: required with --eirp-w/--power-w")
        _positive(args, "distance_m")
        pd = pd_isotropic(eirp, args.distance_m, args.duty_factor)
        if args.freq_hz is not None:
            _positive(args, "freq_hz")
            _near_field_check(args.freq_hz, args.distance_m)
    elif args.e_rms_v_per_m is not None:
        _nonneg(args, "e_rms_v_per_m")
        pd = pd_from_field(args.e_rms_v_per_m)
    else:
        _nonneg(args, "pd_w_per_m2")
        pd = args.pd_w_per_m2
    print(f"pd_w_per_m2 = {report.fmt(pd)}")
    print(f"e_rms_v_per_m = {report.fmt(field_from_pd(pd))}")
    return EXIT_OK


def cmd_profile(args) -> int:
    _positive(args, "freq_hz")
    eirp = _eirp(args)
    if (eirp is None) == (args.pd_w_per_m2 is None):
        raise UsageError("give exactly one of --pd-w-per-m2 or --eirp-w/--power-w")
    if eirp is not None:
        if args.distance_m is None:
            raise UsageError("--distance-m: required with --eirp-w/--power-w")
        _positive(args, "distance_m")
        pd = pd_isotropic(eirp, args.distance_m, args.duty_factor)
    else:
        _nonneg(args, "pd_w_per_m2")
        pd = args.pd_w_per_m2
    tfile = _tissue_file(args)
    skin = _skin(fixtures.load_tissue(tfile), args.freq_hz)
    delta_mm = skin.penetration_depth * 1e3
    step = args.step_mm if args.step_mm is not None else delta_mm / 100
    depth_max = args.depth_max_mm if args.depth_max_mm is not None else 5 * delta_mm
    if not (math.isfinite(step) and step > 0):
        raise UsageError(f"--step-mm: must be a positive number, got {step!r}")
    if not (math.isfinite(depth_max) and depth_max > 0):
        raise UsageError(f"--depth-max-mm: must be a positive number, got {depth_max!r}")
    exp = surface_sar(pd, skin.reflection, skin.penetration_depth, skin.mass_density)
    n = int(math.floor(depth_max / step + 1e-9)) + 1
    depths_mm = step * np.arange(n)
    sar = sar_depth_profile(exp, depths_mm * 1e-3)
    text = report.csv_text(["depth_mm", "sar_w_per_kg"], zip(depths_mm, sar))
    svg = report.line_plot_svg(depths_mm, sar, f"SAR versus depth, {args.freq_hz / 1e9:g} GHz",
                               "depth (mm)", "SAR (W/kg)") if args.svg else None
    _emit("profile", args, text, {"tissue": tfile}, svg)
    absorbed = absorbed_power_per_area(exp)
    print(f"absorbed_w_per_m2 = {report.fmt(absorbed)}", file=sys.stderr)
    return EXIT_OK


def cmd_compare(args) -> int:
    config = args.config or Path(str(fixtures.DATA / "compare" / "generations.toml"))
    gens = fixtures.load_compare(config)
    inputs = {"config": Path(config)}
    rows = []
    for g in gens:
        tfile = fixtures._resolve(g.tissue, Path(config), fixtures.tissue_path)
        inputs[f"tissue:{g.tissue}"] = tfile
        skin = skin_parameters(fixtures.load_tissue(tfile), g.frequency_hz)
        pd = pd_isotropic(g.eirp_w, g.distance_m)
        exp = surface_sar(pd, skin.reflection, skin.penetration_depth, skin.mass_density)
        rows.append([g.name, g.frequency_hz, exp.sar_surface, skin.penetration_depth * 1e3])
    text = report.csv_text(["generation", "frequency_hz", "sar_w_per_kg", "delta_mm"], rows)
    svg = None
    if args.svg:
        svg = report.bar_chart_svg([r[0] for r in rows], [r[2] for r in rows],
                                   "Surface SAR by network generation", "SAR (W/kg)")
    _emit("compare", args, text, inputs, svg)
    return EXIT_OK


def _load_scenario(args):
    sf = fixtures.load_scenario(args.scenario, args.tissue_file, args.limits)
    scn = sf.scenario
    if scn.limit.sar_averaging_mass_g and any(
            scn.limit.rule_for(f, scn.population).metric is cmp.Metric.SAR
            for f in scn.frequencies if _has_rule(scn, f)):
        _advise(f"profile {scn.limit.name!r} specifies {scn.limit.sar_averaging_mass_g:g} g averaged "
                "SAR; reported SAR is unaveraged surface SAR")
    for f in scn.frequencies:
        if _has_rule(scn, f):
            rule = scn.limit.rule_for(f, scn.population)
            pref = cmp.select_metric(f, scn.authority)
            if rule.metric is not pref:
                _advise(f"{scn.authority.value} assesses {pref.value.upper()} at {f:g} Hz but "
                        f"profile {scn.limit.name!r} uses {rule.metric.value.upper()}")
    return sf


def _has_rule(scn, f) -> bool:
    try:
        scn.limit.rule_for(f, scn.population)
        return True
    except DosimetryError:
        return False


def _map_rows(samples):
    return [[s.point[0], s.point[1], s.pd_total, s.sar_surface, s.compliance.margin_db,
             s.dominant_source] for s in samples]


MAP_HEADER = ["x_m", "y_m", "pd_w_per_m2", "sar_w_per_kg", "margin_db", "dominant_source"]


def cmd_map(args) -> int:
    sf = _load_scenario(args)
    scn = sf.scenario
    if not isinstance(scn.evaluation, Grid):
        raise UsageError(f"{args.scenario}: map needs a [grid] table")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        samples = exposure_map(scn, workers=args.workers)
    for w in caught:
        _advise(str(w.message))
    text = report.csv_text(MAP_HEADER, _map_rows(samples))
    svg = None
    if args.svg:
        svg = report.heatmap_svg([s.point[0] for s in samples], [s.point[1] for s in samples],
                                 [s.pd_total for s in samples], scn.evaluation.step,
                                 "Incident power density", "PD W/m^2")
    _emit("map", args, text, sf.inputs, svg)
    return EXIT_OK


def _points(scn):
    ev = scn.evaluation
    if isinstance(ev, Point):
        return [evaluate_point(scn, (ev.x, ev.y))]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        samples = exposure_map(scn)
    for w in caught:
        _advise(str(w.message))
    return samples


def cmd_check(args) -> int:
    sf = _load_scenario(args)
    scn = sf.scenario
    samples = _points(scn)
    if isinstance(scn.evaluation, Point):
        for note in near_field_advisories(scn, [scn.evaluation]):
            _advise(note)
    rows = []
    for s in samples:
        c = s.compliance
        rows.append([s.point[0], s.point[1], c.metric_used.value, c.measured, c.limit,
                     c.margin_db, "compliant" if c.compliant else "NON-COMPLIANT"])
    text = report.csv_text(["x_m", "y_m", "metric", "measured", "limit", "margin_db", "verdict"], rows)
    _emit("check", args, text, sf.inputs)
    worst = min(samples, key=lambda s: s.compliance.margin_db)
    ok = all(s.compliance.compliant for s in samples)
    print(f"{'compliant' if ok else 'NON-COMPLIANT'}: worst margin "
          f"{worst.compliance.margin_db:+.2f} dB at ({worst.point[0]:g}, {worst.point[1]:g})",
          file=sys.stderr)
    return EXIT_OK if ok else EXIT_NONCOMPLIANT


def _ref_for_output(ref_path: Path, shipped_dir) -> str:
    """Shipped fixtures are referenced by name, anything else by absolute path."""
    shipped = Path(str(shipped_dir))
    if ref_path.parent.resolve() == shipped.resolve():
        return ref_path.stem
    return str(ref_path.resolve())


def cmd_mitigate(args) -> int:
    sf = _load_scenario(args)
    scn = sf.scenario
    if args.protect_x is not None or args.protect_y is not None:
        if args.protect_x is None or args.protect_y is None:
            raise UsageError("--protect-x and --protect-y must be given together")
        protected = (args.protect_x, args.protect_y)
    elif isinstance(scn.evaluation, Point):
        protected = (scn.evaluation.x, scn.evaluation.y)
    else:
        raise UsageError("--protect-x/--protect-y: required for grid scenarios")
    before = evaluate_point(scn, protected)
    if args.strategy == "power-control":
        s = power_control(scn, protected)
        new = scn.scaled(s)
        print("strategy = power-control")
        print(f"scale = {report.fmt(s)}")
    else:
        if not 0 <= args.source_index < len(scn.sources):
            raise UsageError(f"--source-index: must lie in [0, {len(scn.sources) - 1}]")
        new = steer_away(scn, args.source_index, protected)
        g = new.sources[args.source_index].gain
        angle = getattr(g, "steer_rad", getattr(g, "boresight_rad", None))
        print("strategy = steer-away")
        print(f"source_index = {args.source_index}")
        print(f"steer_rad = {report.fmt(angle)}")
    after = evaluate_point(new, protected)
    print(f"pd_before_w_per_m2 = {report.fmt(before.pd_total)}")
    print(f"pd_after_w_per_m2 = {report.fmt(after.pd_total)}")
    print(f"margin_before_db = {report.fmt(before.compliance.margin_db)}")
    print(f"margin_after_db = {report.fmt(after.compliance.margin_db)}")
    print(f"compliant_after = {report.fmt(after.compliance.compliant)}")
    out = args.output
    text = fixtures.dump_scenario(
        new,
        _ref_for_output(sf.inputs["tissue"], fixtures.DATA / "tissues"),
        _ref_for_output(sf.inputs["limits"], fixtures.DATA / "limits"),
    )
    report.write_text(out, text)
    path = args.manifest or Path(str(out) + ".manifest.json")
    argd = {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(vars(args).items())
            if k not in ("func", "manifest")}
    report.write_manifest(path, report.manifest("mitigate", sf.inputs, [out], argd))
    return EXIT_OK


# --- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="skinsar", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sar", help="surface SAR for one source at one distance")
    _add_source(p)
    p.add_argument("--freq-hz", type=float, required=True)
    _add_tissue(p)
    _add_outputs(p, svg=False)
    p.set_defaults(func=cmd_sar)

    p = sub.add_parser("pd", help="power density from EIRP or field strength")
    _add_source(p, distance_required=False)
    p.add_argument("--freq-hz", type=float, help="enables the near-field advisory")
    p.add_argument("--e-rms-v-per-m", type=float, help="RMS electric field (V/m)")
    p.add_argument("--pd-w-per-m2", type=float, help="power density (W/m^2), prints the field")
    p.set_defaults(func=cmd_pd)

    p = sub.add_parser("profile", help="SAR versus depth below the skin surface")
    _add_source(p, distance_required=False)
    p.add_argument("--pd-w-per-m2", type=float, help="incident power density (W/m^2)")
    p.add_argument("--freq-hz", type=float, required=True)
    p.add_argument("--depth-max-mm", type=float, help="deepest row (default 5 delta)")
    p.add_argument("--step-mm", type=float, help="depth step (default delta / 100)")
    _add_tissue(p)
    _add_outputs(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("compare", help="surface SAR and depth per network generation")
    p.add_argument("--config", type=Path, help="generation config (default: shipped calibration)")
    _add_outputs(p)
    p.set_defaults(func=cmd_compare)

    for name, func, helptext in (
        ("map", cmd_map, "exposure map over the scenario grid"),
        ("check", cmd_check, "compliance at the scenario point or grid"),
        ("mitigate", cmd_mitigate, "power control or beam steering for a protected point"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("scenario", type=Path)
        p.add_argument("--tissue-file", type=Path, help="override the scenario tissue")
        p.add_argument("--limits", type=Path, help="override the scenario limit profile")
        if name == "map":
            p.add_argument("--workers", type=int, default=1, help="threads for grid evaluation")
            _add_outputs(p)
        elif name == "check":
            _add_outputs(p, svg=False)
        else:
            p.add_argument("--strategy", choices=("power-control", "steer-away"), required=True)
            p.add_argument("--source-index", type=int, default=0)
            p.add_argument("--protect-x", type=float)
            p.add_argument("--protect-y", type=float)
            p.add_argument("--output", type=Path, required=True, help="mitigated scenario TOML")
            p.add_argument("--manifest", type=Path)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"skinsar: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DosimetryError, OSError) as exc:
        print(f"skinsar: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
