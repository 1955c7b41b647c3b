"""Trajectory sampling, relative aging, and opacity encoding.

Piecewise-linear trajectories become renderable point sequences: segment
endpoints are kept as anchors, k extra points per segment are interpolated at
uniform time fractions, and every point carries its age relative to the
node's first appearance in the active window.  Age maps linearly to opacity,
newest most opaque.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .model import Interval, Point, TemporalGraph, TemporalNode

DEFAULT_OPACITY_FLOOR = 0.15
DEFAULT_OPACITY_CEIL = 1.0


@dataclass
class ClampDiagnostics:
    """Counts out-of-range opacity/weight inputs silently clamped."""

    count: int = 0

    def reset(self) -> None:
        self.count = 0


clamp_diagnostics = ClampDiagnostics()


@dataclass(frozen=True)
class SampledPoint:
    node_id: str
    t: float
    position: Point
    kind: str  # "anchor" | "interpolated"
    age: float
    norm_age: float
    opacity: float


@dataclass(frozen=True)
class MovementSegment:
    """Polyline piece between two consecutive sampled points of one node."""

    start_index: int
    end_index: int
    mean_age: float
    mean_norm_age: float
    opacity: float


@dataclass(frozen=True)
class SampledTrajectory:
    node_id: str
    points: tuple[SampledPoint, ...]
    movement: tuple[MovementSegment, ...] = field(default=())


def opacity_for_age(
    norm_age: float,
    o_min: float = DEFAULT_OPACITY_FLOOR,
    o_max: float = DEFAULT_OPACITY_CEIL,
) -> float:
    """Linear opacity over normalized age; newest (norm_age=1) is most opaque."""
    if norm_age < 0.0 or norm_age > 1.0:
        clamp_diagnostics.count += 1
        norm_age = min(1.0, max(0.0, norm_age))
    return o_min + (o_max - o_min) * norm_age


def relative_age(node: TemporalNode, t: float, window: Interval) -> tuple[float, float]:
    """(age, normalized age) of the node at t, relative to the window.

    Age counts from the node's first appearance inside the window and is
    normalized by its visible span there (0 when that span is instantaneous).
    Raises ValueError when t falls outside the node's clipped appearance.
    """
    clipped = node.clip(window)
    if clipped is None or not clipped.alive_at(t):
        raise ValueError(
            f"t={t} outside the appearance of node '{node.id}' within "
            f"[{window.start}, {window.end}]"
        )
    first = clipped.first_appearance()
    last = clipped.last_appearance()
    age = t - first
    span = last - first
    return age, (age / span if span > 0 else 0.0)


def sample_trajectory(
    node: TemporalNode,
    window: Interval,
    samples_per_segment: int,
    o_min: float = DEFAULT_OPACITY_FLOOR,
    o_max: float = DEFAULT_OPACITY_CEIL,
) -> SampledTrajectory:
    """Sample a node's clipped trajectory at k interpolated points per segment.

    Each clipped segment contributes its two endpoints as anchors plus k
    interior points at time fractions i/(k+1).  Consecutive points that
    coincide in position (shared segment boundaries, hold periods) collapse
    into the earliest one.  Movement polylines never bridge appearance gaps.
    """
    if samples_per_segment < 0:
        raise ValueError(f"samples_per_segment must be >= 0, got {samples_per_segment}")
    clipped = node.clip(window)
    if clipped is None:
        raise ValueError(f"node '{node.id}' does not intersect the window")
    first = clipped.first_appearance()
    last = clipped.last_appearance()
    span = last - first

    def make_point(t: float, position: Point, kind: str) -> SampledPoint:
        age = t - first
        norm_age = age / span if span > 0 else 0.0
        return SampledPoint(
            node_id=node.id,
            t=t,
            position=position,
            kind=kind,
            age=age,
            norm_age=norm_age,
            opacity=opacity_for_age(norm_age, o_min, o_max),
        )

    points: list[SampledPoint] = []
    movement: list[MovementSegment] = []
    k = samples_per_segment
    for appearance in clipped.merged_appearance():
        run_start = len(points)
        run: list[SampledPoint] = []

        def emit(candidate: SampledPoint) -> None:
            if run and run[-1].position == candidate.position:
                # Hold period or shared boundary anchor: keep the earliest,
                # upgrading interpolated to anchor if needed.
                if candidate.kind == "anchor" and run[-1].kind != "anchor":
                    run[-1] = SampledPoint(
                        node_id=run[-1].node_id,
                        t=run[-1].t,
                        position=run[-1].position,
                        kind="anchor",
                        age=run[-1].age,
                        norm_age=run[-1].norm_age,
                        opacity=run[-1].opacity,
                    )
                return
            run.append(candidate)

        for seg in clipped.trajectory:
            if not (appearance.start <= seg.interval.start and seg.interval.end <= appearance.end):
                continue
            emit(make_point(seg.interval.start, seg.p_start, "anchor"))
            if seg.interval.length > 0:
                for i in range(1, k + 1):
                    f = i / (k + 1)
                    t = seg.interval.start + f * seg.interval.length
                    emit(make_point(t, seg.position_at(t), "interpolated"))
            emit(make_point(seg.interval.end, seg.p_end, "anchor"))

        points.extend(run)
        for local in range(run_start, len(points) - 1):
            a, b = points[local], points[local + 1]
            mean_norm = (a.norm_age + b.norm_age) / 2.0
            movement.append(
                MovementSegment(
                    start_index=local,
                    end_index=local + 1,
                    mean_age=(a.age + b.age) / 2.0,
                    mean_norm_age=mean_norm,
                    opacity=opacity_for_age(mean_norm, o_min, o_max),
                )
            )
    return SampledTrajectory(node_id=node.id, points=tuple(points), movement=tuple(movement))


def movement_ages(traj: SampledTrajectory) -> list[float]:
    """Mean age per consecutive point pair; empty with fewer than 2 points."""
    points = traj.points
    return [(a.age + b.age) / 2.0 for a, b in zip(points, points[1:])]


@dataclass(frozen=True)
class EdgeInstruction:
    """How to draw one appearance of an edge: anchored to sampled points."""

    edge_id: str
    t_event: float
    endpoint_a: SampledPoint
    endpoint_b: SampledPoint
    opacity: float


def _nearest_point(traj: SampledTrajectory, t: float) -> SampledPoint | None:
    """Sampled point nearest in time to t; earlier sample wins ties."""
    best: SampledPoint | None = None
    best_dist = float("inf")
    for point in traj.points:
        dist = abs(point.t - t)
        if dist < best_dist:
            best = point
            best_dist = dist
    return best


def edges_for_node(
    graph: TemporalGraph,
    node_id: str,
    window: Interval,
    sampled: dict[str, SampledTrajectory],
    o_min: float = DEFAULT_OPACITY_FLOOR,
    o_max: float = DEFAULT_OPACITY_CEIL,
) -> list[EdgeInstruction]:
    """Drawing instructions for all edges incident to node_id in the window.

    Each edge appearance interval intersecting the window is anchored at its
    clipped midpoint: both endpoints snap to the incident nodes' sampled
    points nearest in time, and the edge opacity comes from the mean of the
    two endpoint ages.
    """
    if node_id not in graph.nodes:
        raise KeyError(f"unknown node id '{node_id}'")
    instructions: list[EdgeInstruction] = []
    for edge in graph.edges_incident(node_id):
        other = edge.target if edge.source == node_id else edge.source
        traj_self = sampled.get(node_id)
        traj_other = sampled.get(other)
        if traj_self is None or traj_other is None:
            continue
        for appearance in edge.appearance:
            cut = appearance.intersect(window)
            if cut is None:
                continue
            t_event = (cut.start + cut.end) / 2.0
            endpoint_a = _nearest_point(traj_self, t_event)
            endpoint_b = _nearest_point(traj_other, t_event)
            if endpoint_a is None or endpoint_b is None:
                continue
            mean_norm = (endpoint_a.norm_age + endpoint_b.norm_age) / 2.0
            instructions.append(
                EdgeInstruction(
                    edge_id=edge.id,
                    t_event=t_event,
                    endpoint_a=endpoint_a,
                    endpoint_b=endpoint_b,
                    opacity=opacity_for_age(mean_norm, o_min, o_max),
                )
            )
    return instructions
