"""Temporal graph projection engine: aged trajectories, density, guidance."""

from .model import (
    GraphValidationError,
    Interval,
    Point,
    PositionSegment,
    TemporalEdge,
    TemporalGraph,
    TemporalNode,
    alive_at,
    clip_to_interval,
    position_at,
)
from .ingest import (
    EventRecord,
    FallbackLayoutParams,
    IngestConfig,
    IngestError,
    LayoutImport,
    equivalent_timeslice_count,
    expand_event,
    fallback_layout,
    import_layout,
    ingest_events,
    merge_edge_intervals,
    parse_events_csv,
    parse_graph,
    serialize_graph,
)
from .sampling import (
    EdgeInstruction,
    MovementSegment,
    SampledPoint,
    SampledTrajectory,
    edges_for_node,
    movement_ages,
    opacity_for_age,
    relative_age,
    sample_trajectory,
)
from .density import (
    DensityGrid,
    GridBounds,
    WeightedPoint,
    age_weight,
    density_for_window,
    density_grid,
    weighted_points_for_window,
)
from .analytics import (
    GuidanceInterval,
    MobilityScore,
    TimelineBin,
    TimelineBreakpoint,
    TimelineSeries,
    default_locks,
    interaction_intervals,
    mobility,
    rank_mobility,
    resample_timeline,
    timeline_series,
)

__version__ = "0.1.0"

__all__ = [
    "GraphValidationError",
    "Interval",
    "Point",
    "PositionSegment",
    "TemporalEdge",
    "TemporalGraph",
    "TemporalNode",
    "alive_at",
    "clip_to_interval",
    "position_at",
    "EventRecord",
    "FallbackLayoutParams",
    "IngestConfig",
    "IngestError",
    "LayoutImport",
    "equivalent_timeslice_count",
    "expand_event",
    "fallback_layout",
    "import_layout",
    "ingest_events",
    "merge_edge_intervals",
    "parse_events_csv",
    "parse_graph",
    "serialize_graph",
    "EdgeInstruction",
    "MovementSegment",
    "SampledPoint",
    "SampledTrajectory",
    "edges_for_node",
    "movement_ages",
    "opacity_for_age",
    "relative_age",
    "sample_trajectory",
    "DensityGrid",
    "GridBounds",
    "WeightedPoint",
    "age_weight",
    "density_for_window",
    "density_grid",
    "weighted_points_for_window",
    "GuidanceInterval",
    "MobilityScore",
    "TimelineBin",
    "TimelineBreakpoint",
    "TimelineSeries",
    "default_locks",
    "interaction_intervals",
    "mobility",
    "rank_mobility",
    "resample_timeline",
    "timeline_series",
]
