"""Mobility ranking, guidance intervals, and timeline aggregation.

Mobility is the cumulative Euclidean length of a node's trajectory within
the active window; ranking by it surfaces the most active nodes.  Guidance
intervals are the maximal time spans in which every pair of locked nodes has
an alive edge, served as clickable timeline highlights.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .ingest import merge_edge_intervals
from .model import Interval, TemporalGraph, TemporalNode, alive_at


@dataclass(frozen=True)
class MobilityScore:
    node_id: str
    label: str
    length: float


@dataclass(frozen=True)
class GuidanceInterval:
    interval: Interval
    locked: frozenset[str]


@dataclass(frozen=True)
class TimelineBreakpoint:
    t: float
    nodes_alive: int
    edges_alive: int


@dataclass(frozen=True)
class TimelineSeries:
    """Step function of alive counts; each breakpoint holds the counts
    immediately after its time."""

    breakpoints: tuple[TimelineBreakpoint, ...]

    def value_at(self, t: float) -> tuple[int, int]:
        nodes, edges = 0, 0
        for bp in self.breakpoints:
            if bp.t > t:
                break
            nodes, edges = bp.nodes_alive, bp.edges_alive
        return nodes, edges


@dataclass(frozen=True)
class TimelineBin:
    start: float
    end: float
    nodes_alive: int
    edges_alive: int


def mobility(node: TemporalNode, window: Interval) -> MobilityScore:
    """Total Euclidean length of the node's trajectory clipped to the window.

    Hold periods and stationary segments contribute nothing; a node with no
    overlap scores 0.
    """
    clipped = node.clip(window)
    length = 0.0
    if clipped is not None:
        for seg in clipped.trajectory:
            length += math.dist(seg.p_start, seg.p_end)
    return MobilityScore(node_id=node.id, label=node.label, length=length)


def rank_mobility(graph: TemporalGraph, window: Interval) -> list[MobilityScore]:
    """Nodes intersecting the window, sorted by descending mobility.

    Ties break by ascending node id so the ranking (and the sidebar built
    from it) is deterministic.
    """
    scores = [
        mobility(node, window)
        for node in graph.nodes.values()
        if node.clip(window) is not None
    ]
    scores.sort(key=lambda s: (-s.length, s.node_id))
    return scores


def default_locks(graph: TemporalGraph, window: Interval | None = None) -> list[str]:
    """The three most mobile nodes: locked by default on load."""
    if window is None:
        window = graph.extent
    if window is None:
        return []
    return [s.node_id for s in rank_mobility(graph, window)[:3]]


def _intersect_sorted(a: list[Interval], b: list[Interval]) -> list[Interval]:
    """Intersection of two sorted disjoint interval lists (positive-length only)."""
    out: list[Interval] = []
    i = j = 0
    while i < len(a) and j < len(b):
        lo = max(a[i].start, b[j].start)
        hi = min(a[i].end, b[j].end)
        if lo < hi:
            out.append(Interval(lo, hi))
        if a[i].end <= b[j].end:
            i += 1
        else:
            j += 1
    return out


def interaction_intervals(
    graph: TemporalGraph,
    locked: set[str] | frozenset[str],
    padding: float = 0.0,
) -> list[GuidanceInterval]:
    """Maximal windows in which every pair of locked nodes has an alive edge.

    Per pair, the union of all its edges' appearance intervals (each padded
    by +-padding) is formed; the result is the intersection over all pairs,
    clipped to the graph extent.  Fewer than two locked nodes, or any pair
    that never interacts, yields an empty list.
    """
    if padding < 0:
        raise ValueError(f"padding must be >= 0, got {padding}")
    unknown = sorted(set(locked) - set(graph.nodes))
    if unknown:
        raise KeyError(f"unknown node ids: {', '.join(unknown)}")
    if len(locked) < 2 or graph.extent is None:
        return []

    by_pair: dict[tuple[str, str], list[Interval]] = {}
    for edge in graph.edges.values():
        if edge.source in locked and edge.target in locked:
            pair = tuple(sorted((edge.source, edge.target)))
            by_pair.setdefault(pair, []).extend(edge.appearance)

    result: list[Interval] | None = None
    for u, v in combinations(sorted(locked), 2):
        windows = by_pair.get((u, v))
        if not windows:
            return []
        padded = [Interval(w.start - padding, w.end + padding) for w in windows]
        union = merge_edge_intervals(padded)
        result = union if result is None else _intersect_sorted(result, union)
        if not result:
            return []

    assert result is not None
    clipped = [
        cut
        for w in result
        if (cut := w.intersect(graph.extent)) is not None and cut.length > 0
    ]
    locked_set = frozenset(locked)
    return [GuidanceInterval(interval=w, locked=locked_set) for w in clipped]


def timeline_series(graph: TemporalGraph) -> TimelineSeries:
    """Alive node/edge counts as a step function over appearance boundaries.

    One breakpoint per distinct boundary time, carrying the counts
    immediately after that instant (so an element's end time is the moment
    its count drops).
    """
    deltas: dict[float, list[int]] = {}
    for node in graph.nodes.values():
        for a in node.appearance:
            deltas.setdefault(a.start, [0, 0])[0] += 1
            deltas.setdefault(a.end, [0, 0])[0] -= 1
    for edge in graph.edges.values():
        for a in edge.appearance:
            deltas.setdefault(a.start, [0, 0])[1] += 1
            deltas.setdefault(a.end, [0, 0])[1] -= 1
    if not deltas:
        return TimelineSeries(breakpoints=(TimelineBreakpoint(0.0, 0, 0),))

    breakpoints = []
    nodes = edges = 0
    for t in sorted(deltas):
        d_nodes, d_edges = deltas[t]
        nodes += d_nodes
        edges += d_edges
        breakpoints.append(TimelineBreakpoint(t=t, nodes_alive=nodes, edges_alive=edges))
    return TimelineSeries(breakpoints=tuple(breakpoints))


def resample_timeline(series: TimelineSeries, bins: int) -> list[TimelineBin]:
    """Peak-preserving fixed-width binning of the step function.

    Each bin reports the maximum alive count reached inside it, so short
    spikes survive any bin width.
    """
    if bins < 1:
        raise ValueError(f"bins must be >= 1, got {bins}")
    bps = series.breakpoints
    start, end = bps[0].t, bps[-1].t
    if end == start:
        bp = bps[-1]
        return [TimelineBin(start, end, bp.nodes_alive, bp.edges_alive)]

    width = (end - start) / bins
    out: list[TimelineBin] = []
    for b in range(bins):
        lo = start + b * width
        last = b == bins - 1
        hi = end if last else start + (b + 1) * width
        # Bins are [lo, hi) except the final one, which closes at the end.
        nodes, edges = series.value_at(lo)
        for bp in bps:
            if bp.t <= lo:
                continue
            if bp.t < hi or (last and bp.t <= hi):
                nodes = max(nodes, bp.nodes_alive)
                edges = max(edges, bp.edges_alive)
        out.append(TimelineBin(start=lo, end=hi, nodes_alive=nodes, edges_alive=edges))
    return out


def probe_counts(graph: TemporalGraph, t: float) -> tuple[int, int]:
    """Alive counts at t straight from the interval scan (oracle hook)."""
    node_ids, edge_ids = alive_at(graph, t)
    return len(node_ids), len(edge_ids)
