"""
Which metric, which limit?
==========================

Below a switch frequency the guidelines assess SAR; above it they assess
incident power density. The switch differs between authorities, and so do
the shipped limit profiles.
"""

import numpy as np

from skinsar import classify_band, select_metric
from skinsar.fixtures import limits_path, load_limits

# %%
# Band classes and assessment metric at a few carriers
for f in (700e6, 2.6e9, 3.5e9, 6e9, 8e9, 28e9, 39e9, 60e9):
    c = classify_band(f)
    print(f"{f / 1e9:6.2f} GHz  {c.band.value:>4} {c.fr.value:>4}  "
          f"FCC: {select_metric(f, 'FCC').value}  ICNIRP: {select_metric(f, 'ICNIRP').value}")

# %%
# Rules of the shipped profiles
for name in ("icnirp2020-public", "icnirp1998-public", "fcc-mpe-general"):
    prof = load_limits(limits_path(name))
    print(f"\n{prof.name} (SAR averaged over {prof.sar_averaging_mass_g:g} g)")
    for rule in prof.rules:
        print(f"  {rule.describe():<48} {rule.metric.value:>3} <= {rule.limit_value:g} {rule.metric.unit}")

# %%
# The same 28 GHz power density against each profile
pd = np.array([1.0, 5.0, 10.0, 20.0])
prof = load_limits(limits_path("icnirp2020-public"))
limit = prof.rule_for(28e9).limit_value
print("\nmargin (dB) at 28 GHz:", np.round(10 * np.log10(limit / pd), 2))
