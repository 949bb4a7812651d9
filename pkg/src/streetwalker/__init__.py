"""Gap-sensor navigation in street polygons.

A point robot that only senses depth discontinuities (gaps) and target
visibility searches an unknown street from s to t. The package provides the
geometry core, street model with a geodesic oracle, the gap sensor with
critical-event tracking, deterministic and randomized doubling strategies,
and a benchmark harness for competitive-ratio experiments.
"""

from .geometry import (
    EPS,
    GeometryError,
    Point2,
    SimplePolygon,
    VisibilityRegion,
    first_boundary_hit,
    orient,
    segment_inside,
    segment_intersection,
    visibility_region,
)
from .streets import (
    GeodesicPath,
    Street,
    StreetError,
    StreetGeometryError,
    StreetParseError,
    StreetPropertyError,
    build_street,
    load_street,
    save_street,
    shortest_path,
    validate_street,
)
from .sensor import (
    CriticalEvent,
    Gap,
    GapSensor,
    InvariantViolationError,
    SensorError,
    SensorFrame,
    funnel_transition,
    mark_primitive,
)
from .navigate import (
    FunnelState,
    NonTerminationError,
    StrategyConfig,
    Trajectory,
    collinear_check,
    funnel_walk,
    randomize_entry,
    run,
    stage_budget,
)
from .generators import (
    GenerationError,
    InstanceFamily,
    gen_corridor,
    gen_event_showcase,
    gen_funnel,
    gen_random_street,
    gen_single_gap,
    gen_two_pocket,
)
from .harness import (
    Aggregate,
    RunReport,
    aggregate,
    read_csv,
    run_batch,
    run_one,
    write_csv,
)
from .svgplot import render_svg

__version__ = "0.1.0"
