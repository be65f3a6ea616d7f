"""Stability analysis of continuous piecewise-linear maps with one switching plane.

The origin of such a map is a fixed point on the switching boundary; this
package decides and quantifies its stability.  ``maps`` holds the map types
and orbit iteration, ``sphere`` the radial/angular decomposition (stretch
factor, circle map, Birkhoff averages, attracted-fraction estimates),
``polygons`` the forward-image stability certificate for the planar normal
form, ``sweep`` deterministic two-parameter grids, and ``cli`` the command
line front end.
"""

from .errors import DegenerateImageError, RegimeError, ZeroImageError
from .maps import (
    CONTINUITY_TOL,
    CONV_RADIUS,
    DIV_RADIUS,
    ORBIT_BUDGET,
    EigenPair2,
    NormalForm2D,
    OrbitStatus,
    OrbitVerdict,
    PWLMap,
    eig2,
    eval_pwl,
    make_normal_form,
    orbit,
    perturbed_map,
)
from .polygons import (
    EPS_GEOM,
    CertificateStatus,
    Ga92Verdict,
    StarPolygon,
    StarRegion,
    containment_protrusion,
    delta_sequence,
    ga92,
    image_polygon,
    region_contains,
    separated_from_gamma,
    stability_iteration,
    union_star,
    write_polygon_csv,
)
from .report import AnalysisReport, analyze
from .sphere import (
    EPS_ANGLE,
    GFixedPoint,
    InvariantRay,
    MeasureEstimate,
    PeriodicOrbit,
    RegimeReport,
    RhoEstimate,
    SphereMapEval,
    angle_of,
    birkhoff_lambda,
    circle_D,
    circle_G,
    classify_regimes,
    g_fixed_points,
    histogram_G,
    invariant_rays,
    periodic_orbits_G,
    rho_closed_form,
    rho_sampled,
    sphere_eval,
)
from .sweep import (
    GridMode,
    GridResult,
    GridSpec,
    mix_seed,
    sweep_asymptotic,
    sweep_measure,
    write_grid_csv,
    write_grid_pgm,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "CONTINUITY_TOL",
    "CONV_RADIUS",
    "CertificateStatus",
    "DIV_RADIUS",
    "DegenerateImageError",
    "EPS_ANGLE",
    "EPS_GEOM",
    "EigenPair2",
    "GFixedPoint",
    "Ga92Verdict",
    "GridMode",
    "GridResult",
    "GridSpec",
    "InvariantRay",
    "MeasureEstimate",
    "NormalForm2D",
    "ORBIT_BUDGET",
    "OrbitStatus",
    "OrbitVerdict",
    "PWLMap",
    "PeriodicOrbit",
    "RegimeError",
    "RegimeReport",
    "RhoEstimate",
    "SphereMapEval",
    "StarPolygon",
    "StarRegion",
    "ZeroImageError",
    "analyze",
    "angle_of",
    "birkhoff_lambda",
    "circle_D",
    "circle_G",
    "classify_regimes",
    "containment_protrusion",
    "delta_sequence",
    "eig2",
    "eval_pwl",
    "g_fixed_points",
    "ga92",
    "histogram_G",
    "image_polygon",
    "invariant_rays",
    "make_normal_form",
    "mix_seed",
    "orbit",
    "periodic_orbits_G",
    "perturbed_map",
    "region_contains",
    "rho_closed_form",
    "rho_sampled",
    "separated_from_gamma",
    "sphere_eval",
    "stability_iteration",
    "sweep_asymptotic",
    "sweep_measure",
    "union_star",
    "write_grid_csv",
    "write_grid_pgm",
    "write_polygon_csv",
]
