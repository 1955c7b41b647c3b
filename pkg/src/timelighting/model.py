"""In-memory temporal graph model.

Nodes and edges exist over sets of closed real-valued time intervals and
nodes move along piecewise-linear trajectories through the space-time cube.
Everything here is immutable after construction; all derived computations
treat a graph as read-only input.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

Point = tuple[float, float]


class GraphValidationError(ValueError):
    """A graph element violates a structural invariant.

    Carries the offending element id (when known) so parsers can attach
    positional diagnostics.
    """

    def __init__(self, message: str, element_id: str | None = None):
        super().__init__(message)
        self.element_id = element_id


def _check_finite(value: float, what: str, element_id: str | None = None) -> float:
    if not math.isfinite(value):
        raise GraphValidationError(f"{what} must be finite, got {value!r}", element_id)
    return float(value)


@dataclass(frozen=True, order=True)
class Interval:
    """Closed time interval [start, end]; zero length means an instantaneous event."""

    start: float
    end: float

    def __post_init__(self) -> None:
        _check_finite(self.start, "interval start")
        _check_finite(self.end, "interval end")
        if self.start > self.end:
            raise GraphValidationError(f"interval start {self.start} > end {self.end}")

    @property
    def length(self) -> float:
        return self.end - self.start

    def contains(self, t: float) -> bool:
        return self.start <= t <= self.end

    def overlaps(self, other: "Interval") -> bool:
        return self.start <= other.end and other.start <= self.end

    def intersect(self, other: "Interval") -> "Interval | None":
        lo = max(self.start, other.start)
        hi = min(self.end, other.end)
        if lo > hi:
            return None
        return Interval(lo, hi)


@dataclass(frozen=True)
class PositionSegment:
    """Linear motion from p_start to p_end over interval (layout units)."""

    interval: Interval
    p_start: Point
    p_end: Point

    def __post_init__(self) -> None:
        for coord in (*self.p_start, *self.p_end):
            _check_finite(coord, "segment coordinate")
        if self.interval.length == 0 and self.p_start != self.p_end:
            raise GraphValidationError(
                "zero-length segment requires p_start == p_end, got "
                f"{self.p_start} != {self.p_end}"
            )

    def position_at(self, t: float) -> Point:
        """Interpolate within the segment; t must lie inside the interval.

        Endpoint times return the stored endpoints bit-for-bit.
        """
        if t == self.interval.start:
            return self.p_start
        if t == self.interval.end:
            return self.p_end
        f = (t - self.interval.start) / self.interval.length
        return (
            (1.0 - f) * self.p_start[0] + f * self.p_end[0],
            (1.0 - f) * self.p_start[1] + f * self.p_end[1],
        )

    def clip(self, window: Interval) -> "PositionSegment | None":
        """Geometric restriction to window; None if the times are disjoint."""
        cut = self.interval.intersect(window)
        if cut is None:
            return None
        if cut == self.interval:
            return self
        p0 = self.position_at(cut.start)
        p1 = self.position_at(cut.end)
        if cut.length == 0:
            p1 = p0
        return PositionSegment(cut, p0, p1)


def _validate_disjoint_sorted(intervals: tuple[Interval, ...], what: str, element_id: str) -> None:
    # Touching endpoints are fine (contiguous trajectory segments share an
    # instant); interiors must not overlap.
    for prev, cur in zip(intervals, intervals[1:]):
        if cur.start < prev.end:
            raise GraphValidationError(
                f"{what} of '{element_id}' must be sorted and non-overlapping: "
                f"[{prev.start}, {prev.end}] then [{cur.start}, {cur.end}]",
                element_id,
            )


def merge_touching(intervals: tuple[Interval, ...]) -> tuple[Interval, ...]:
    """Coalesce a sorted run of intervals wherever they touch or overlap."""
    merged: list[Interval] = []
    for cur in intervals:
        if merged and cur.start <= merged[-1].end:
            if cur.end > merged[-1].end:
                merged[-1] = Interval(merged[-1].start, cur.end)
        else:
            merged.append(cur)
    return tuple(merged)


@dataclass(frozen=True)
class TemporalNode:
    id: str
    label: str
    appearance: tuple[Interval, ...]
    trajectory: tuple[PositionSegment, ...] = ()

    def __post_init__(self) -> None:
        if not self.appearance:
            raise GraphValidationError(f"node '{self.id}' has no appearance intervals", self.id)
        _validate_disjoint_sorted(self.appearance, "appearance intervals", self.id)
        segs = tuple(s.interval for s in self.trajectory)
        _validate_disjoint_sorted(segs, "trajectory segments", self.id)
        union = merge_touching(self.appearance)
        for seg in self.trajectory:
            if not any(
                a.start <= seg.interval.start and seg.interval.end <= a.end
                for a in union
            ):
                raise GraphValidationError(
                    f"trajectory segment [{seg.interval.start}, {seg.interval.end}] of node "
                    f"'{self.id}' lies outside its appearance intervals",
                    self.id,
                )

    def merged_appearance(self) -> tuple[Interval, ...]:
        """Appearance with touching intervals coalesced (the visible spans)."""
        return merge_touching(self.appearance)

    def alive_at(self, t: float) -> bool:
        return any(a.contains(t) for a in self.appearance)

    def first_appearance(self) -> float:
        return self.appearance[0].start

    def last_appearance(self) -> float:
        return self.appearance[-1].end

    def position_at(self, t: float) -> Point | None:
        """Position at time t, or None when the node does not exist at t.

        Inside a segment the position is interpolated linearly.  Between
        segments of the same appearance interval the node holds its most
        recent endpoint, and before that interval's first segment it sits at
        that segment's start point, so the position is continuous within
        every appearance interval.  Nodes with no trajectory have no
        position.
        """
        if not self.trajectory:
            return None
        visible = next((a for a in self.merged_appearance() if a.contains(t)), None)
        if visible is None:
            return None
        in_span = [
            s
            for s in self.trajectory
            if visible.start <= s.interval.start and s.interval.end <= visible.end
        ]
        last_end: Point | None = None
        for seg in in_span:
            if seg.interval.contains(t):
                return seg.position_at(t)
            if seg.interval.end < t:
                last_end = seg.p_end
            else:
                break
        if last_end is not None:
            return last_end
        if in_span:
            return in_span[0].p_start
        # The node is visible but this appearance interval carries no layout
        # data: hold the most recent endpoint from an earlier one.
        earlier = [s for s in self.trajectory if s.interval.end <= t]
        if earlier:
            return earlier[-1].p_end
        return self.trajectory[0].p_start

    def clip(self, window: Interval) -> "TemporalNode | None":
        """Restriction to window; None when nothing of the node survives."""
        appearance = tuple(
            cut for a in self.appearance if (cut := a.intersect(window)) is not None
        )
        if not appearance:
            return None
        trajectory = tuple(
            cut for s in self.trajectory if (cut := s.clip(window)) is not None
        )
        return TemporalNode(self.id, self.label, appearance, trajectory)


@dataclass(frozen=True)
class TemporalEdge:
    id: str
    source: str
    target: str
    appearance: tuple[Interval, ...]

    def __post_init__(self) -> None:
        if self.source == self.target:
            raise GraphValidationError(
                f"edge '{self.id}' is a self loop on '{self.source}'", self.id
            )
        if not self.appearance:
            raise GraphValidationError(f"edge '{self.id}' has no appearance intervals", self.id)
        _validate_disjoint_sorted(self.appearance, "appearance intervals", self.id)

    def alive_at(self, t: float) -> bool:
        return any(a.contains(t) for a in self.appearance)

    def clip(self, window: Interval) -> "TemporalEdge | None":
        appearance = tuple(
            cut for a in self.appearance if (cut := a.intersect(window)) is not None
        )
        if not appearance:
            return None
        return TemporalEdge(self.id, self.source, self.target, appearance)


@dataclass(frozen=True)
class TemporalGraph:
    """Id-indexed nodes and edges plus the overall time extent.

    extent is None only for the empty graph.
    """

    nodes: dict[str, TemporalNode]
    edges: dict[str, TemporalEdge]
    extent: Interval | None = field(default=None)

    def __post_init__(self) -> None:
        for edge in self.edges.values():
            for endpoint in (edge.source, edge.target):
                if endpoint not in self.nodes:
                    raise GraphValidationError(
                        f"edge '{edge.id}' references unknown node '{endpoint}'", edge.id
                    )
        object.__setattr__(self, "extent", self._compute_extent())

    def _compute_extent(self) -> Interval | None:
        starts: list[float] = []
        ends: list[float] = []
        for element in (*self.nodes.values(), *self.edges.values()):
            starts.append(element.appearance[0].start)
            ends.append(element.appearance[-1].end)
        if not starts:
            return None
        return Interval(min(starts), max(ends))

    @classmethod
    def build(
        cls,
        nodes: list[TemporalNode] | tuple[TemporalNode, ...],
        edges: list[TemporalEdge] | tuple[TemporalEdge, ...] = (),
    ) -> "TemporalGraph":
        node_map: dict[str, TemporalNode] = {}
        for node in nodes:
            if node.id in node_map:
                raise GraphValidationError(f"duplicate node id '{node.id}'", node.id)
            node_map[node.id] = node
        edge_map: dict[str, TemporalEdge] = {}
        for edge in edges:
            if edge.id in edge_map:
                raise GraphValidationError(f"duplicate edge id '{edge.id}'", edge.id)
            edge_map[edge.id] = edge
        return cls(node_map, edge_map)

    def edges_incident(self, node_id: str) -> list[TemporalEdge]:
        return [e for e in self.edges.values() if node_id in (e.source, e.target)]

    def structurally_equal(self, other: "TemporalGraph") -> bool:
        return self.nodes == other.nodes and self.edges == other.edges


def position_at(node: TemporalNode, t: float) -> Point | None:
    """Position of node at time t, or None outside its appearance."""
    return node.position_at(t)


def alive_at(graph: TemporalGraph, t: float) -> tuple[set[str], set[str]]:
    """Ids of the nodes and edges whose appearance contains t (closed intervals)."""
    node_ids = {n.id for n in graph.nodes.values() if n.alive_at(t)}
    edge_ids = {e.id for e in graph.edges.values() if e.alive_at(t)}
    return node_ids, edge_ids


def clip_to_interval(graph: TemporalGraph, window: Interval) -> TemporalGraph:
    """Filtered view of graph restricted to window.

    Appearance intervals are intersected with the window, trajectory segments
    are cut geometrically at the window edges, and elements left with no
    appearance are dropped (as are edges that lose an endpoint).  A window
    disjoint from the extent yields an empty graph.
    """
    nodes: dict[str, TemporalNode] = {}
    for node in graph.nodes.values():
        clipped = node.clip(window)
        if clipped is not None:
            nodes[node.id] = clipped
    edges: dict[str, TemporalEdge] = {}
    for edge in graph.edges.values():
        if edge.source not in nodes or edge.target not in nodes:
            continue
        clipped_edge = edge.clip(window)
        if clipped_edge is not None:
            edges[edge.id] = clipped_edge
    return TemporalGraph(nodes, edges)
