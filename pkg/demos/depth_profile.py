"""
How deep does the energy go?
============================

SAR decays as exp(-2z/delta) below the surface. Here we compare the decay
at 2.6 GHz and 28 GHz for the same incident power density and check that
integrating the profile recovers the power that crossed the boundary.
"""

from pathlib import Path

import numpy as np

from skinsar import absorbed_power_per_area, builtin_tissue, sar_depth_profile, skin_parameters
from skinsar import surface_sar
from skinsar.report import line_plot_svg

out_dir = Path(__file__).with_name("_out")
out_dir.mkdir(exist_ok=True)

skin = builtin_tissue("dry-skin")
pd = 10.0  # W/m^2

for f in (2.6e9, 28e9):
    p = skin_parameters(skin, f)
    exp = surface_sar(pd, p.reflection, p.penetration_depth, p.mass_density)

    # %%
    # Sample the profile down to five penetration depths
    z = np.linspace(0.0, 5 * p.penetration_depth, 501)
    sar = sar_depth_profile(exp, z)
    half = int(np.argmin(np.abs(z - p.penetration_depth / 2)))
    print(f"{f / 1e9:4.1f} GHz: delta = {p.penetration_depth * 1e3:6.3f} mm, "
          f"surface SAR = {sar[0]:.4f} W/kg, SAR(delta/2)/SAR(0) = {sar[half] / sar[0]:.4f}")

    # %%
    # Trapezoid integral of rho * SAR against the closed form PD (1 - R^2)
    absorbed = np.sum((sar[1:] + sar[:-1]) * np.diff(z)) / 2 * p.mass_density
    print(f"        absorbed: quadrature {absorbed:.5f} W/m^2, "
          f"closed form {absorbed_power_per_area(exp):.5f} W/m^2")

    (out_dir / f"profile_{f / 1e9:g}ghz.svg").write_text(line_plot_svg(
        z * 1e3, sar, f"SAR versus depth, {f / 1e9:g} GHz", "depth (mm)", "SAR (W/kg)"))
