"""HTTP service exposing the engine to the frontend and to scripts.

Computation endpoints are pure functions of the loaded graph and the query
parameters; the one mutable resource is the session (brushed window, locked
nodes, view parameters), guarded by a single writer lock with a version
counter so clients can detect lost updates.
"""
from __future__ import annotations

import logging
import os
import threading
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from fastapi.staticfiles import StaticFiles

from .. import analytics, density, sampling
from ..ingest import equivalent_timeslice_count
from ..model import GraphValidationError, Interval, TemporalGraph
from . import schemas

log = logging.getLogger("timelighting.server")


def configure_logging() -> None:
    level = os.environ.get("TIMELIGHTING_LOG", "INFO").upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO))


class SessionStore:
    """Last-write-wins session state with a version counter."""

    def __init__(self, graph: TemporalGraph):
        self._lock = threading.Lock()
        self._graph = graph
        extent = graph.extent or Interval(0.0, 0.0)
        self._state = schemas.SessionModel(
            version=0,
            window=schemas.IntervalModel.from_interval(extent),
            locked=analytics.default_locks(graph),
            params=schemas.ViewParamsModel(),
        )

    def get(self) -> schemas.SessionModel:
        with self._lock:
            return self._state.model_copy(deep=True)

    def update(self, update: schemas.SessionUpdate) -> schemas.SessionModel:
        with self._lock:
            state = self._state
            window = update.window or state.window
            locked = update.locked if update.locked is not None else state.locked
            params = update.params or state.params
            extent = self._graph.extent
            if extent is not None:
                if window.start > window.end:
                    raise HTTPException(400, detail="window start must be <= end")
                if window.start < extent.start or window.end > extent.end:
                    raise HTTPException(
                        400,
                        detail=f"window must lie within the extent "
                        f"[{extent.start}, {extent.end}]",
                    )
            unknown = sorted(set(locked) - set(self._graph.nodes))
            if unknown:
                raise HTTPException(400, detail=f"unknown node ids: {', '.join(unknown)}")
            self._state = schemas.SessionModel(
                version=state.version + 1, window=window, locked=locked, params=params
            )
            return self._state.model_copy(deep=True)


def _window_or_extent(
    graph: TemporalGraph, from_t: float | None, to_t: float | None
) -> Interval:
    extent = graph.extent
    if extent is None:
        raise HTTPException(400, detail="graph is empty")
    start = extent.start if from_t is None else from_t
    end = extent.end if to_t is None else to_t
    if start > end:
        raise HTTPException(400, detail=f"window start {start} > end {end}")
    return Interval(start, end)


def create_app(graph: TemporalGraph, static_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="timelighting", version="0.1.0")
    app.state.graph = graph
    app.state.session = SessionStore(graph)

    @app.get("/api/meta", response_model=schemas.MetaResponse)
    def meta() -> schemas.MetaResponse:
        return schemas.graph_meta(graph, equivalent_timeslice_count(graph))

    @app.get("/api/timeline", response_model=schemas.TimelineResponse)
    def timeline(bins: int = Query(default=200, ge=1)) -> schemas.TimelineResponse:
        series = analytics.timeline_series(graph)
        binned = analytics.resample_timeline(series, bins)
        return schemas.TimelineResponse.from_series(series, binned, graph.extent)

    @app.get("/api/trajectories", response_model=schemas.TrajectoriesResponse)
    def trajectories(
        from_t: float | None = Query(default=None, alias="from"),
        to_t: float | None = Query(default=None, alias="to"),
        k: int = Query(default=3, ge=0),
        ids: str | None = Query(default=None, description="comma-separated node ids"),
    ) -> schemas.TrajectoriesResponse:
        window = _window_or_extent(graph, from_t, to_t)
        wanted = None
        if ids is not None:
            wanted = [node_id for node_id in ids.split(",") if node_id]
            unknown = sorted(set(wanted) - set(graph.nodes))
            if unknown:
                raise HTTPException(400, detail=f"unknown node ids: {', '.join(unknown)}")
        out = []
        for node_id in sorted(graph.nodes):
            if wanted is not None and node_id not in wanted:
                continue
            node = graph.nodes[node_id]
            if node.clip(window) is None:
                continue
            traj = sampling.sample_trajectory(node, window, k)
            out.append(schemas.TrajectoryModel.from_trajectory(traj, node.label))
        return schemas.TrajectoriesResponse(
            window=schemas.IntervalModel.from_interval(window),
            samples_per_segment=k,
            trajectories=out,
        )

    @app.get("/api/edges", response_model=schemas.EdgesResponse)
    def edges(
        node: str,
        from_t: float | None = Query(default=None, alias="from"),
        to_t: float | None = Query(default=None, alias="to"),
        k: int = Query(default=3, ge=0),
    ) -> schemas.EdgesResponse:
        if node not in graph.nodes:
            raise HTTPException(400, detail=f"unknown node id '{node}'")
        window = _window_or_extent(graph, from_t, to_t)
        sampled = {}
        for node_id, other in graph.nodes.items():
            if other.clip(window) is not None:
                sampled[node_id] = sampling.sample_trajectory(other, window, k)
        instructions = sampling.edges_for_node(graph, node, window, sampled)
        return schemas.EdgesResponse(
            node_id=node,
            window=schemas.IntervalModel.from_interval(window),
            edges=[schemas.EdgeInstructionModel.from_instruction(i) for i in instructions],
        )

    @app.get("/api/density", response_model=schemas.DensityResponse)
    def density_endpoint(
        from_t: float | None = Query(default=None, alias="from"),
        to_t: float | None = Query(default=None, alias="to"),
        k: int = Query(default=3, ge=0),
        bandwidth: float = Query(default=1.0, gt=0),
        w: int = Query(default=density.DEFAULT_GRID_SIZE, ge=2),
        h: int = Query(default=density.DEFAULT_GRID_SIZE, ge=2),
    ) -> schemas.DensityResponse:
        window = _window_or_extent(graph, from_t, to_t)
        try:
            grid = density.density_for_window(graph, window, k, bandwidth, w, h)
        except ValueError as exc:
            raise HTTPException(400, detail=str(exc)) from exc
        return schemas.DensityResponse.from_grid(grid)

    @app.get("/api/mobility", response_model=schemas.MobilityResponse)
    def mobility(
        from_t: float | None = Query(default=None, alias="from"),
        to_t: float | None = Query(default=None, alias="to"),
    ) -> schemas.MobilityResponse:
        window = _window_or_extent(graph, from_t, to_t)
        ranking = analytics.rank_mobility(graph, window)
        mean = sum(s.length for s in ranking) / len(ranking) if ranking else 0.0
        return schemas.MobilityResponse(
            window=schemas.IntervalModel.from_interval(window),
            ranking=[schemas.MobilityEntryModel.from_score(s) for s in ranking],
            default_locked=[s.node_id for s in ranking[:3]],
            mean_length=mean,
        )

    @app.get("/api/guidance", response_model=schemas.GuidanceResponse)
    def guidance(
        locked: str = Query(description="comma-separated node ids"),
        padding: float = Query(default=0.0, ge=0),
    ) -> schemas.GuidanceResponse:
        ids = [node_id for node_id in locked.split(",") if node_id]
        try:
            intervals = analytics.interaction_intervals(graph, set(ids), padding)
        except KeyError as exc:
            raise HTTPException(400, detail=str(exc.args[0])) from exc
        return schemas.GuidanceResponse(
            locked=sorted(set(ids)),
            padding=padding,
            intervals=[schemas.GuidanceIntervalModel.from_guidance(g) for g in intervals],
        )

    @app.get("/api/session", response_model=schemas.SessionModel)
    def get_session() -> schemas.SessionModel:
        return app.state.session.get()

    @app.put("/api/session", response_model=schemas.SessionModel)
    def put_session(update: schemas.SessionUpdate) -> schemas.SessionModel:
        return app.state.session.update(update)

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="static")

    return app


def load_app_from_file(graph_path: str | Path, static_dir: str | Path | None = None) -> FastAPI:
    from ..ingest import parse_graph

    text = Path(graph_path).read_text(encoding="utf-8")
    try:
        graph = parse_graph(text)
    except (GraphValidationError, ValueError) as exc:
        raise SystemExit(f"failed to load graph {graph_path}: {exc}") from exc
    return create_app(graph, static_dir)
