"""Computational lab for the slanted-circle projection family, circle
tangency geometry, and box-counting dimension experiments."""

from .boxdim import (
    DimEstimate,
    box_count_1d,
    box_count_2d,
    default_ladder,
    dim_fit,
    projection_dim_scan,
    union_circle_dim,
    union_wave_dim,
    wave_union_column_count,
)
from .circles import (
    Circle,
    IncidenceParams,
    annulus_intersection_samples,
    circle_of,
    in_base_region,
    incidence_params,
    internal_tangency_point,
    internally_tangent,
)
from .clouds import BipartitePair, WeightedCloud, uniform_cloud
from .curve import (
    FULL_CIRCLE,
    IntervalSet,
    Point3,
    SineWave,
    ThetaInterval,
    direction,
    direction_deriv,
    in_wave_neighborhood,
    min_projection_angle,
    normal_axis,
    plane_proj_norm,
    project,
    project_flat,
    project_points,
    projection_zero_count,
    sublevel_set,
    tangency_defect,
    tangency_parameter,
)
from .fractals import (
    IFSSpec,
    cone_cloud,
    frostman_estimate,
    generate_cantor,
    ratio_for_dimension,
)
from .incidence import (
    CircleIndex,
    circle_multiplicity,
    double_count_check,
    high_multiplicity_fraction,
    wave_multiplicity,
    wolff_bound_ratio,
    wolff_family,
)
from .rects import (
    ArcRect,
    DEFAULT_TANGENCY_SCALE,
    comparable,
    is_tangent,
    max_incomparable_family,
    rect_from_incident_pair,
    rect_type,
    tangent_mass,
)

__version__ = "0.1.0"
