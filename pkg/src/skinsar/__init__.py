"""RF power density and surface SAR at the air-skin boundary.

Submodules:

- ``tissue``: dielectric tables, reflection coefficient, penetration depth
- ``propagation``: Poynting vector, plane-wave and link-budget power density
- ``dosimetry``: local SAR, surface SAR, depth profile
- ``compliance``: limit profiles, metric selection, 5G band classes
- ``scenario``: multi-source evaluation, exposure maps, mitigation
- ``fixtures``: TOML formats; ``report``: CSV/SVG/manifest; ``cli``
"""

__version__ = "0.1.0"

from .compliance import (  # noqa: E402
    Authority,
    ComplianceResult,
    LimitProfile,
    LimitRule,
    Metric,
    check,
    classify_band,
    select_metric,
)
from .dosimetry import (  # noqa: E402
    SurfaceExposure,
    absorbed_power_per_area,
    local_sar,
    sar_depth_profile,
    surface_sar,
)
from .errors import *  # noqa: E402,F401,F403
from .fixtures import (  # noqa: E402
    builtin_tissue,
    dump_scenario,
    limits_path,
    load_limits,
    load_scenario,
    load_tissue,
)
from .propagation import (  # noqa: E402
    FieldSample,
    Isotropic,
    RadioSource,
    Sector,
    SteeredBeam,
    field_from_pd,
    pd_from_field,
    pd_isotropic,
    pd_link_budget,
    poynting,
)
from .scenario import (  # noqa: E402
    ExposureSample,
    Grid,
    Point,
    Scenario,
    evaluate_point,
    exposure_map,
    power_control,
    steer_away,
)
from .tissue import (  # noqa: E402
    TissueProfile,
    TissueRow,
    lookup_tissue,
    penetration_depth,
    reflection_coefficient,
    skin_parameters,
)
