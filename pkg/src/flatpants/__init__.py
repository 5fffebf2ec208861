"""Flat pairs of pants with one cone point: parameters, developments,
metric checks, the parameter set B and Gauss-Bonnet bookkeeping."""

from .assembly import (
    Feasibility,
    GluingError,
    GluingSpec,
    SurfaceSpec,
    decomposition_feasible,
    double,
    gauss_bonnet_bounded,
    gauss_bonnet_closed,
    glue,
)
from .development import ConePoint, Development, build, cone_angle, emit_svg
from .metric import (
    MetricGraph,
    build_graph,
    distance_between_boundaries,
    distance_to_boundary,
    measure,
    structure_distance,
)
from .params import (
    ConstraintError,
    DegeneracyReport,
    DistanceParams,
    LengthRadiusParams,
    NonFiniteError,
    classify,
    la_to_lr,
    lr_to_la,
    validate_la,
    validate_lr,
)
from .teich import Stratum, contract, membership, segment_in_B

__version__ = "0.1.0"
