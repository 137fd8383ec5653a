"""
Exposure map of a street deployment, then mitigation
====================================================

Five transmitters on a 100 m x 100 m plan. We map the incident power
density, find the worst point, and try two ways to bring a protected
point back under the limit: scaling power and steering the beam away.
"""

import time
from pathlib import Path

import numpy as np

from skinsar import evaluate_point, exposure_map, power_control, steer_away
from skinsar.fixtures import DATA, load_scenario
from skinsar.report import heatmap_svg

out_dir = Path(__file__).with_name("_out")
out_dir.mkdir(exist_ok=True)

scn = load_scenario(DATA / "scenarios" / "street-grid.toml").scenario

# %%
# Evaluate the whole grid (deterministic regardless of worker count)
t0 = time.perf_counter()
samples = exposure_map(scn, workers=4)
print(f"{len(samples)} points in {time.perf_counter() - t0:.2f} s")

pd = np.array([s.pd_total for s in samples])
margins = np.array([s.compliance.margin_db for s in samples])
worst = samples[int(np.argmin(margins))]
print(f"peak PD {pd.max():.3g} W/m^2, worst margin {worst.compliance.margin_db:+.2f} dB "
      f"at {worst.point}, dominated by source {worst.dominant_source}")
print(f"non-compliant points: {int(np.sum(margins < 0))}")

(out_dir / "street_pd.svg").write_text(heatmap_svg(
    [s.point[0] for s in samples], [s.point[1] for s in samples], pd,
    scn.evaluation.step, "Incident power density", "PD W/m^2"))

# %%
# Push every source up until a point next to source 0 is four times over
protected = (11.0, 10.25)
before = evaluate_point(scn, protected)
hot = scn.scaled(4 * before.compliance.limit / before.compliance.measured)
print(f"hot scenario margin at {protected}: {evaluate_point(hot, protected).compliance.margin_db:+.2f} dB")

# %%
# Option 1: uniform power control
s = power_control(hot, protected)
print(f"power control: scale {s:.6f}, margin after "
      f"{evaluate_point(hot.scaled(s), protected).compliance.margin_db:+.2e} dB")

# %%
# Option 2: steer the dominant source away from the protected point
k = evaluate_point(hot, protected).dominant_source
steered = steer_away(hot, k, protected)
after = evaluate_point(steered, protected)
print(f"steer source {k} away: PD {evaluate_point(hot, protected).pd_total:.3g} -> "
      f"{after.pd_total:.3g} W/m^2, compliant = {after.compliance.compliant}")
