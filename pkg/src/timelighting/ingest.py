"""Parsing, event-list ingestion, layout import, and the fallback layout.

Canonical graph file (JSON, UTF-8)::

    {"nodes": [{"id": ..., "label": ..., "appearance": [[s, e], ...],
                "trajectory": [{"interval": [s, e], "from": [x, y], "to": [x, y]}, ...]}],
     "edges": [{"id": ..., "source": ..., "target": ..., "appearance": [[s, e], ...]}]}

Event file: CSV with header ``timestamp,source,target``; timestamps are UNIX
seconds or ISO-8601, auto-detected once per file.

Layout file: ``{"trajectories": [{"id": ..., "segments": [...]}]}`` with the
same segment shape as the graph file.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from .model import (
    GraphValidationError,
    Interval,
    Point,
    PositionSegment,
    TemporalGraph,
    TemporalNode,
    TemporalEdge,
)


class IngestError(ValueError):
    """Malformed input document or event list."""


@dataclass(frozen=True)
class EventRecord:
    """One timestamped interaction between two labels."""

    timestamp: float
    source: str
    target: str

    def __post_init__(self) -> None:
        if self.source == self.target:
            raise IngestError(
                f"event at t={self.timestamp} is a self loop on '{self.source}'"
            )


@dataclass(frozen=True)
class IngestConfig:
    """Policy knobs for building a graph from raw events.

    edge_duration: width of the window an instantaneous event is expanded to,
    centered on its timestamp (default 24 hours).
    """

    edge_duration: float = 86400.0
    merge_policy: str = "overlap-merge"
    node_appearance: str = "from-first-event-to-end"

    def __post_init__(self) -> None:
        if self.edge_duration <= 0:
            raise IngestError(f"edge_duration must be > 0, got {self.edge_duration}")


@dataclass
class LayoutImport:
    """Result of attaching a layout: the new graph plus diagnostics.

    stationary_nodes: ids that had no trajectory in the layout and were given
    a stationary segment at the origin.  clipped_nodes: ids whose segments
    exceeded their appearance and were cut back.
    """

    graph: TemporalGraph
    stationary_nodes: list[str] = field(default_factory=list)
    clipped_nodes: list[str] = field(default_factory=list)

    def warnings(self) -> list[str]:
        out = []
        for node_id in self.stationary_nodes:
            out.append(f"node '{node_id}' missing from layout; placed stationary at origin")
        for node_id in self.clipped_nodes:
            out.append(f"node '{node_id}' layout segments clipped to its appearance")
        return out


# ---------------------------------------------------------------------------
# Canonical JSON graph format


def _offset_of(document: str, element_id: str | None) -> int | None:
    """Byte offset of the element's id literal in the document, if findable."""
    if element_id is None:
        return None
    idx = document.find(json.dumps(element_id))
    if idx < 0:
        return None
    return len(document[:idx].encode("utf-8"))


def _intervals_from_json(raw: object, owner: str) -> tuple[Interval, ...]:
    if not isinstance(raw, list):
        raise IngestError(f"appearance of '{owner}' must be a list of [start, end] pairs")
    out = []
    for pair in raw:
        if not isinstance(pair, list) or len(pair) != 2:
            raise IngestError(f"appearance entry of '{owner}' must be [start, end], got {pair!r}")
        try:
            out.append(Interval(float(pair[0]), float(pair[1])))
        except (TypeError, ValueError, GraphValidationError) as exc:
            raise IngestError(f"bad interval {pair!r} on '{owner}': {exc}") from exc
    return tuple(out)


def _segment_from_json(raw: object, owner: str) -> PositionSegment:
    if not isinstance(raw, dict):
        raise IngestError(f"trajectory entry of '{owner}' must be an object, got {raw!r}")
    try:
        interval = raw["interval"]
        p_from = raw["from"]
        p_to = raw["to"]
        return PositionSegment(
            Interval(float(interval[0]), float(interval[1])),
            (float(p_from[0]), float(p_from[1])),
            (float(p_to[0]), float(p_to[1])),
        )
    except (KeyError, IndexError, TypeError, ValueError, GraphValidationError) as exc:
        raise IngestError(f"bad trajectory segment on '{owner}': {exc}") from exc


def parse_graph(document: str) -> TemporalGraph:
    """Parse the canonical JSON graph format, enforcing all model invariants.

    Raises IngestError with the offending element id and its byte offset in
    the document where one can be attributed.
    """
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise IngestError(f"malformed JSON at byte {exc.pos}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise IngestError("top level must be a JSON object")

    element_id: str | None = None
    try:
        nodes = []
        for raw in data.get("nodes", []):
            element_id = str(raw.get("id", "")) if isinstance(raw, dict) else None
            if not isinstance(raw, dict) or "id" not in raw:
                raise IngestError(f"node entry missing 'id': {raw!r}")
            nodes.append(
                TemporalNode(
                    id=str(raw["id"]),
                    label=str(raw.get("label", raw["id"])),
                    appearance=_intervals_from_json(raw.get("appearance", []), str(raw["id"])),
                    trajectory=tuple(
                        _segment_from_json(s, str(raw["id"]))
                        for s in raw.get("trajectory", [])
                    ),
                )
            )
        edges = []
        for raw in data.get("edges", []):
            element_id = str(raw.get("id", "")) if isinstance(raw, dict) else None
            if not isinstance(raw, dict) or "id" not in raw:
                raise IngestError(f"edge entry missing 'id': {raw!r}")
            edges.append(
                TemporalEdge(
                    id=str(raw["id"]),
                    source=str(raw.get("source", "")),
                    target=str(raw.get("target", "")),
                    appearance=_intervals_from_json(raw.get("appearance", []), str(raw["id"])),
                )
            )
        element_id = None
        return TemporalGraph.build(nodes, edges)
    except (GraphValidationError, IngestError) as exc:
        where = getattr(exc, "element_id", None) or element_id
        offset = _offset_of(document, where)
        suffix = f" (element '{where}'" + (f", byte offset {offset})" if offset is not None else ")") \
            if where else ""
        raise IngestError(f"invalid graph document: {exc}{suffix}") from exc


def _interval_json(interval: Interval) -> list[float]:
    return [interval.start, interval.end]


def serialize_graph(graph: TemporalGraph) -> str:
    """Inverse of parse_graph; stable key order for byte-reproducible output."""
    doc = {
        "nodes": [
            {
                "id": n.id,
                "label": n.label,
                "appearance": [_interval_json(a) for a in n.appearance],
                "trajectory": [
                    {
                        "interval": _interval_json(s.interval),
                        "from": list(s.p_start),
                        "to": list(s.p_end),
                    }
                    for s in n.trajectory
                ],
            }
            for n in sorted(graph.nodes.values(), key=lambda n: n.id)
        ],
        "edges": [
            {
                "id": e.id,
                "source": e.source,
                "target": e.target,
                "appearance": [_interval_json(a) for a in e.appearance],
            }
            for e in sorted(graph.edges.values(), key=lambda e: e.id)
        ],
    }
    return json.dumps(doc, indent=1)


# ---------------------------------------------------------------------------
# Event lists


def parse_events_csv(text: str) -> list[EventRecord]:
    """Parse ``timestamp,source,target`` CSV; timestamp format detected per file."""
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise IngestError("empty event file") from None
    expected = ["timestamp", "source", "target"]
    if [h.strip().lower() for h in header] != expected:
        raise IngestError(f"event file header must be {','.join(expected)}, got {header}")

    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise IngestError("event file has no data rows")

    iso = False
    try:
        float(rows[0][0])
    except ValueError:
        iso = True

    events = []
    for lineno, row in enumerate(rows, start=2):
        if len(row) != 3:
            raise IngestError(f"line {lineno}: expected 3 fields, got {len(row)}")
        raw_t, source, target = (cell.strip() for cell in row)
        try:
            if iso:
                stamp = datetime.fromisoformat(raw_t.replace("Z", "+00:00"))
                if stamp.tzinfo is None:
                    stamp = stamp.replace(tzinfo=timezone.utc)
                t = stamp.timestamp()
            else:
                t = float(raw_t)
        except ValueError as exc:
            raise IngestError(f"line {lineno}: bad timestamp {raw_t!r}: {exc}") from exc
        try:
            events.append(EventRecord(t, source, target))
        except IngestError as exc:
            raise IngestError(f"line {lineno}: {exc}") from exc
    return events


def expand_event(event: EventRecord, cfg: IngestConfig) -> Interval:
    """Interval of width cfg.edge_duration centered on the event timestamp."""
    half = cfg.edge_duration / 2.0
    return Interval(event.timestamp - half, event.timestamp + half)


def merge_edge_intervals(intervals: list[Interval]) -> list[Interval]:
    """Coalesce intersecting intervals into their connected unions.

    Output is sorted, pairwise disjoint, and independent of input order; two
    inputs share an output interval iff they are linked by a chain of
    intersections (touching endpoints count).
    """
    if not intervals:
        return []
    ordered = sorted(intervals)
    merged = [ordered[0]]
    for cur in ordered[1:]:
        last = merged[-1]
        if cur.start <= last.end:
            if cur.end > last.end:
                merged[-1] = Interval(last.start, cur.end)
        else:
            merged.append(cur)
    return merged


def ingest_events(events: list[EventRecord], cfg: IngestConfig | None = None) -> TemporalGraph:
    """Event-list pipeline: one node per label, one edge per interacting pair.

    Each event becomes an edge_duration-wide window centered on its timestamp;
    per-pair windows are merged where they intersect.  Nodes appear at their
    first mention and stay until the dataset's end.  Trajectories are left
    empty for a later layout.
    """
    if not events:
        raise IngestError("cannot ingest an empty event list")
    cfg = cfg or IngestConfig()

    first_mention: dict[str, float] = {}
    pair_windows: dict[tuple[str, str], list[Interval]] = {}
    for event in events:
        for label in (event.source, event.target):
            seen = first_mention.get(label)
            if seen is None or event.timestamp < seen:
                first_mention[label] = event.timestamp
        pair = tuple(sorted((event.source, event.target)))
        pair_windows.setdefault(pair, []).append(expand_event(event, cfg))

    edges = [
        TemporalEdge(
            id=f"{a}--{b}",
            source=a,
            target=b,
            appearance=tuple(merge_edge_intervals(windows)),
        )
        for (a, b), windows in sorted(pair_windows.items())
    ]
    end = max(e.appearance[-1].end for e in edges)
    nodes = [
        TemporalNode(id=label, label=label, appearance=(Interval(first, end),))
        for label, first in sorted(first_mention.items())
    ]
    return TemporalGraph.build(nodes, edges)


def equivalent_timeslice_count(graph: TemporalGraph, resolution: float = 86400.0) -> int:
    """How many fixed-width slices discretizing the extent would take."""
    if resolution <= 0:
        raise IngestError(f"resolution must be > 0, got {resolution}")
    if graph.extent is None or graph.extent.length == 0:
        return 0
    return math.ceil(graph.extent.length / resolution)


# ---------------------------------------------------------------------------
# Layout import


def _parse_layout(document: str) -> dict[str, tuple[PositionSegment, ...]]:
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise IngestError(f"malformed layout JSON at byte {exc.pos}: {exc.msg}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("trajectories", []), list):
        raise IngestError("layout must be an object with a 'trajectories' list")
    out: dict[str, tuple[PositionSegment, ...]] = {}
    for raw in data.get("trajectories", []):
        if not isinstance(raw, dict) or "id" not in raw:
            raise IngestError(f"layout trajectory missing 'id': {raw!r}")
        node_id = str(raw["id"])
        segments = tuple(
            _segment_from_json(s, node_id) for s in raw.get("segments", [])
        )
        out[node_id] = tuple(sorted(segments, key=lambda s: s.interval))
    return out


def _stationary_trajectory(node: TemporalNode, position: Point = (0.0, 0.0)) -> tuple[PositionSegment, ...]:
    return tuple(PositionSegment(a, position, position) for a in node.appearance)


def import_layout(graph: TemporalGraph, layout_document: str) -> LayoutImport:
    """Attach externally computed trajectories to a graph.

    Segments reaching past a node's appearance are clipped back (noted per
    node in the diagnostics); nodes absent from the layout get a stationary
    trajectory at the origin.
    """
    layout = _parse_layout(layout_document)
    unknown = sorted(set(layout) - set(graph.nodes))
    if unknown:
        raise IngestError(f"layout references unknown node ids: {', '.join(unknown)}")

    result = LayoutImport(graph=graph)
    nodes = []
    for node in graph.nodes.values():
        segments = layout.get(node.id)
        if not segments:
            nodes.append(
                TemporalNode(node.id, node.label, node.appearance, _stationary_trajectory(node))
            )
            result.stationary_nodes.append(node.id)
            continue
        kept: list[PositionSegment] = []
        clipped = False
        for seg in segments:
            pieces = [
                cut for a in node.appearance if (cut := seg.clip(a)) is not None
            ]
            if len(pieces) != 1 or pieces[0] != seg:
                clipped = True
            kept.extend(pieces)
        if clipped:
            result.clipped_nodes.append(node.id)
        try:
            nodes.append(TemporalNode(node.id, node.label, node.appearance, tuple(kept)))
        except GraphValidationError as exc:
            raise IngestError(f"malformed layout segments for node '{node.id}': {exc}") from exc
    result.graph = TemporalGraph.build(nodes, list(graph.edges.values()))
    return result


# ---------------------------------------------------------------------------
# Fallback layout (plumbing so the repo runs without an external layout tool)


@dataclass(frozen=True)
class FallbackLayoutParams:
    bin_width: float = 86400.0
    iterations: int = 30
    seed: int = 0
    attraction: float = 0.08
    repulsion: float = 0.5
    continuity: float = 0.15
    step: float = 0.1


def fallback_layout(graph: TemporalGraph, params: FallbackLayoutParams | None = None) -> TemporalGraph:
    """Deterministic binned force-directed layout.

    Anchors are placed at bin boundaries: per boundary, alive nodes take a few
    force iterations (edge attraction within the bin, all-pairs repulsion,
    continuity pull toward the previous anchor), then consecutive anchors are
    joined by linear segments.  Identical graph + params give bit-identical
    output.
    """
    params = params or FallbackLayoutParams()
    if not graph.nodes:
        return graph
    assert graph.extent is not None
    rng = np.random.default_rng(params.seed)
    node_ids = sorted(graph.nodes)
    index = {node_id: i for i, node_id in enumerate(node_ids)}
    pos = rng.uniform(-1.0, 1.0, size=(len(node_ids), 2))

    start, end = graph.extent.start, graph.extent.end
    n_bins = max(1, math.ceil((end - start) / params.bin_width)) if end > start else 0
    boundaries = [start + i * params.bin_width for i in range(n_bins)] + [end]
    boundaries = sorted(set(min(b, end) for b in boundaries))

    pair_index: list[tuple[int, int, TemporalEdge]] = [
        (index[e.source], index[e.target], e) for e in graph.edges.values()
    ]
    anchors: dict[str, list[tuple[float, Point]]] = {node_id: [] for node_id in node_ids}

    prev_t = boundaries[0]
    for t in boundaries:
        alive = [i for i, node_id in enumerate(node_ids) if graph.nodes[node_id].alive_at(t)]
        bin_window = Interval(min(prev_t, t), t)
        active_pairs = [
            (i, j)
            for i, j, e in pair_index
            if any(a.overlaps(bin_window) for a in e.appearance)
        ]
        previous = pos.copy()
        for _ in range(params.iterations):
            force = np.zeros_like(pos)
            for ai, i in enumerate(alive):
                for j in alive[ai + 1:]:
                    delta = pos[i] - pos[j]
                    dist_sq = max(float(delta @ delta), 1e-6)
                    push = params.repulsion * delta / dist_sq
                    force[i] += push
                    force[j] -= push
            for i, j in active_pairs:
                delta = pos[j] - pos[i]
                force[i] += params.attraction * delta
                force[j] -= params.attraction * delta
            for i in alive:
                force[i] += params.continuity * (previous[i] - pos[i])
            for i in alive:
                pos[i] = pos[i] + params.step * force[i]
        for i in alive:
            anchors[node_ids[i]].append((t, (float(pos[i][0]), float(pos[i][1]))))
        prev_t = t

    nodes = []
    for node_id in node_ids:
        node = graph.nodes[node_id]
        segments: list[PositionSegment] = []
        for a in node.appearance:
            inside = [(t, p) for t, p in anchors[node_id] if a.start <= t <= a.end]
            if not inside:
                # Appearance shorter than a bin: hold the nearest anchor, or the
                # initial position if the node was never alive at a boundary.
                nearest = min(
                    anchors[node_id],
                    key=lambda tp: min(abs(tp[0] - a.start), abs(tp[0] - a.end)),
                    default=(a.start, (float(pos[index[node_id]][0]), float(pos[index[node_id]][1]))),
                )
                segments.append(PositionSegment(a, nearest[1], nearest[1]))
                continue
            if inside[0][0] > a.start:
                segments.append(
                    PositionSegment(Interval(a.start, inside[0][0]), inside[0][1], inside[0][1])
                )
            for (t0, p0), (t1, p1) in zip(inside, inside[1:]):
                segments.append(PositionSegment(Interval(t0, t1), p0, p1))
            if inside[-1][0] < a.end:
                segments.append(
                    PositionSegment(Interval(inside[-1][0], a.end), inside[-1][1], inside[-1][1])
                )
            elif len(inside) == 1 and inside[0][0] == a.start == a.end:
                segments.append(PositionSegment(a, inside[0][1], inside[0][1]))
        nodes.append(TemporalNode(node.id, node.label, node.appearance, tuple(segments)))
    return TemporalGraph.build(nodes, list(graph.edges.values()))
