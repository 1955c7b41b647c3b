"""Shared generators for randomized oracle tests.

Everything is seeded: a test that takes a seed builds the same graph every
run, so frozen expectations stay valid.
"""
from __future__ import annotations

import random

import pytest

from timelighting import (
    EventRecord,
    Interval,
    PositionSegment,
    TemporalEdge,
    TemporalGraph,
    TemporalNode,
)


def random_appearance(rnd: random.Random, t_lo: float, t_hi: float) -> tuple[Interval, ...]:
    """1-3 sorted intervals with strict gaps inside [t_lo, t_hi]."""
    count = rnd.randint(1, 3)
    cuts = sorted(rnd.uniform(t_lo, t_hi) for _ in range(2 * count))
    intervals = []
    for i in range(0, len(cuts), 2):
        if cuts[i + 1] - cuts[i] < 1e-6:
            cuts[i + 1] = cuts[i] + 1e-3
        intervals.append(Interval(cuts[i], cuts[i + 1]))
    merged = [intervals[0]]
    for iv in intervals[1:]:
        if iv.start <= merged[-1].end:
            merged[-1] = Interval(merged[-1].start, max(merged[-1].end, iv.end))
        else:
            merged.append(iv)
    return tuple(merged)


def random_polyline(
    rnd: random.Random,
    appearance: tuple[Interval, ...],
    max_segments: int = 4,
    allow_holds: bool = True,
) -> tuple[PositionSegment, ...]:
    """Connected polyline per appearance interval, with optional hold gaps."""
    segments: list[PositionSegment] = []
    for a in appearance:
        n = rnd.randint(1, max_segments)
        times = sorted({a.start, a.end, *(rnd.uniform(a.start, a.end) for _ in range(n - 1))})
        point = (rnd.uniform(-50, 50), rnd.uniform(-50, 50))
        for t0, t1 in zip(times, times[1:]):
            if allow_holds and rnd.random() < 0.2:
                # Hold: skip this span; the node keeps its last position.
                continue
            nxt = (rnd.uniform(-50, 50), rnd.uniform(-50, 50))
            segments.append(PositionSegment(Interval(t0, t1), point, nxt))
            point = nxt
    return tuple(segments)


def random_graph(
    seed: int,
    n_nodes: int = 8,
    edge_prob: float = 0.4,
    t_lo: float = 0.0,
    t_hi: float = 100.0,
    with_trajectories: bool = True,
) -> TemporalGraph:
    rnd = random.Random(seed)
    nodes = []
    for i in range(n_nodes):
        appearance = random_appearance(rnd, t_lo, t_hi)
        trajectory = random_polyline(rnd, appearance) if with_trajectories else ()
        nodes.append(TemporalNode(f"n{i:02d}", f"Node {i}", appearance, trajectory))
    edges = []
    for i in range(n_nodes):
        for j in range(i + 1, n_nodes):
            if rnd.random() < edge_prob:
                edges.append(
                    TemporalEdge(
                        id=f"n{i:02d}--n{j:02d}",
                        source=f"n{i:02d}",
                        target=f"n{j:02d}",
                        appearance=random_appearance(rnd, t_lo, t_hi),
                    )
                )
    return TemporalGraph.build(nodes, edges)


RUGBY_LABELS = [
    "benetton", "cardiff", "connacht", "dragons", "edinburgh", "glasgow",
    "leinster", "munster", "ospreys", "scarlets", "ulster", "zebre",
]


def rugby_events(seed: int = 7, n_events: int = 3151, span_days: int = 416) -> list[EventRecord]:
    """Synthetic tweet stream shaped like a 12-team season of mentions."""
    rnd = random.Random(seed)
    first_t = 43200.0
    events = []
    # Guarantee every team is mentioned at least once.
    for i, label in enumerate(RUGBY_LABELS):
        other = RUGBY_LABELS[(i + 1) % len(RUGBY_LABELS)]
        events.append(EventRecord(first_t + i * 3600.0, label, other))
    while len(events) < n_events - 1:
        a, b = rnd.sample(RUGBY_LABELS, 2)
        t = first_t + rnd.uniform(0, span_days * 86400.0 - 3600.0)
        events.append(EventRecord(t, a, b))
    # Pin the last event so the dataset extent is exact.
    a, b = rnd.sample(RUGBY_LABELS, 2)
    events.append(EventRecord(first_t + span_days * 86400.0, a, b))
    return events


@pytest.fixture
def simple_graph() -> TemporalGraph:
    """Two moving nodes and one edge; handy for endpoint tests."""
    nodes = [
        TemporalNode(
            "a", "Alpha", (Interval(0, 10),),
            (
                PositionSegment(Interval(0, 4), (0, 0), (4, 0)),
                PositionSegment(Interval(4, 10), (4, 0), (4, 6)),
            ),
        ),
        TemporalNode(
            "b", "Beta", (Interval(0, 10),),
            (PositionSegment(Interval(0, 10), (10, 10), (0, 10)),),
        ),
    ]
    edges = [TemporalEdge("a--b", "a", "b", (Interval(2, 6),))]
    return TemporalGraph.build(nodes, edges)
