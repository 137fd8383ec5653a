"""
Surface SAR across network generations
======================================

Three carriers at 10 cm from an isotropic radiator, assessed on dry skin.
The millimetre-wave carrier deposits its energy in the first millimetre of
tissue, so its surface SAR is orders of magnitude higher than that of the
lower bands even though the incident power density is comparable.
"""

from pathlib import Path

import numpy as np

from skinsar import builtin_tissue, pd_isotropic, skin_parameters, surface_sar
from skinsar.fixtures import DATA, load_compare
from skinsar.report import bar_chart_svg

out_dir = Path(__file__).with_name("_out")
out_dir.mkdir(exist_ok=True)

# The shipped comparison config lists one EIRP per generation.
generations = load_compare(DATA / "compare" / "generations.toml")
skin = builtin_tissue("dry-skin")

# %%
# Forward model: EIRP -> power density -> surface SAR
names, sars = [], []
for g in generations:
    p = skin_parameters(skin, g.frequency_hz)
    pd = pd_isotropic(g.eirp_w, g.distance_m)
    exp = surface_sar(pd, p.reflection, p.penetration_depth, p.mass_density)
    print(f"{g.name:>5}  {g.frequency_hz / 1e9:5.1f} GHz  R={p.reflection:.3f}  "
          f"delta={p.penetration_depth * 1e3:6.2f} mm  PD={pd:.3e} W/m^2  "
          f"SAR={exp.sar_surface:.3e} W/kg")
    names.append(g.name)
    sars.append(exp.sar_surface)

# %%
# Ratio of the highest to the lowest SAR, in decades
print(f"spread: {np.log10(max(sars) / min(sars)):.1f} decades")

(out_dir / "generations.svg").write_text(
    bar_chart_svg(names, sars, "Surface SAR at 10 cm", "SAR (W/kg)"))
