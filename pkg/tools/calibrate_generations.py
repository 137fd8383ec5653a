"""Regenerate src/skinsar/data/compare/generations.toml.

Each generation's EIRP is the value that, at 10 cm and with the dry-skin
parameters derived at its carrier frequency, reproduces the target surface
SAR. Inversion: PD = SAR * delta * rho / (2 (1 - R^2)), EIRP = PD 4 pi d^2.
"""

import math

from skinsar.dosimetry import invert_surface_sar
from skinsar.fixtures import builtin_tissue
from skinsar.tissue import skin_parameters

DISTANCE_M = 0.1
# name, carrier (Hz), target surface SAR (W/kg), target depth (mm)
TARGETS = [
    ("5G", 28e9, 1.24, 0.9),
    ("4G", 2.6e9, 6.44e-4, 21.0),
    ("3.9G", 2.3e9, 4.35e-5, 23.0),
]


def main():
    tissue = builtin_tissue("dry-skin")
    out = [
        "# Per-generation calibration fixtures for the cross-generation comparison.",
        "# eirp_w is obtained by inverting the surface-SAR formula at distance_m with",
        "# the dry-skin reflection and penetration depth derived at frequency_hz",
        "# (tools/calibrate_generations.py). Target SAR / depth per row:",
    ]
    for name, f, sar, depth in TARGETS:
        out.append(f"#   {name}: {sar:g} W/kg, {depth:g} mm")
    out.append("# The three EIRPs differ by orders of magnitude: no single transmit power")
    out.append("# reproduces all three rows at the same distance.")
    for name, f, sar, _ in TARGETS:
        p = skin_parameters(tissue, f)
        pd = invert_surface_sar(sar, p.reflection, p.penetration_depth, p.mass_density)
        eirp = pd * 4 * math.pi * DISTANCE_M ** 2
        out += [
            "",
            "[[generation]]",
            f'name = "{name}"',
            f"frequency_hz = {f:.1f}",
            f"eirp_w = {eirp!r}",
            f"distance_m = {DISTANCE_M}",
            'tissue = "dry-skin"',
        ]
    print("\n".join(out))


if __name__ == "__main__":
    main()
