"""Wire formats for the HTTP API (and the CLI's analyze report).

Every response model doubles as its published JSON schema via the OpenAPI
document; the engine's dataclasses are converted here and nowhere else.
"""
from __future__ import annotations

import base64

import numpy as np
from pydantic import BaseModel, Field

from ..analytics import GuidanceInterval, MobilityScore, TimelineBin, TimelineSeries
from ..density import DensityGrid
from ..model import Interval, TemporalGraph
from ..sampling import EdgeInstruction, SampledPoint, SampledTrajectory


class IntervalModel(BaseModel):
    start: float
    end: float

    @classmethod
    def from_interval(cls, interval: Interval) -> "IntervalModel":
        return cls(start=interval.start, end=interval.end)

    def to_interval(self) -> Interval:
        return Interval(self.start, self.end)


class MetaResponse(BaseModel):
    extent: IntervalModel | None
    node_count: int
    edge_count: int
    equivalent_timeslices: int = Field(
        description="Slices a fixed 24h discretization of the extent would need"
    )


class SampledPointModel(BaseModel):
    t: float
    x: float
    y: float
    kind: str
    age: float
    norm_age: float
    opacity: float

    @classmethod
    def from_point(cls, p: SampledPoint) -> "SampledPointModel":
        return cls(
            t=p.t, x=p.position[0], y=p.position[1], kind=p.kind,
            age=p.age, norm_age=p.norm_age, opacity=p.opacity,
        )


class MovementSegmentModel(BaseModel):
    start_index: int
    end_index: int
    mean_age: float
    mean_norm_age: float
    opacity: float


class TrajectoryModel(BaseModel):
    node_id: str
    label: str
    points: list[SampledPointModel]
    movement: list[MovementSegmentModel]

    @classmethod
    def from_trajectory(cls, traj: SampledTrajectory, label: str) -> "TrajectoryModel":
        return cls(
            node_id=traj.node_id,
            label=label,
            points=[SampledPointModel.from_point(p) for p in traj.points],
            movement=[
                MovementSegmentModel(
                    start_index=m.start_index,
                    end_index=m.end_index,
                    mean_age=m.mean_age,
                    mean_norm_age=m.mean_norm_age,
                    opacity=m.opacity,
                )
                for m in traj.movement
            ],
        )


class TrajectoriesResponse(BaseModel):
    window: IntervalModel
    samples_per_segment: int
    trajectories: list[TrajectoryModel]


class EdgeInstructionModel(BaseModel):
    edge_id: str
    t_event: float
    endpoint_a: SampledPointModel
    endpoint_b: SampledPointModel
    a_node_id: str
    b_node_id: str
    opacity: float

    @classmethod
    def from_instruction(cls, ins: EdgeInstruction) -> "EdgeInstructionModel":
        return cls(
            edge_id=ins.edge_id,
            t_event=ins.t_event,
            endpoint_a=SampledPointModel.from_point(ins.endpoint_a),
            endpoint_b=SampledPointModel.from_point(ins.endpoint_b),
            a_node_id=ins.endpoint_a.node_id,
            b_node_id=ins.endpoint_b.node_id,
            opacity=ins.opacity,
        )


class EdgesResponse(BaseModel):
    node_id: str
    window: IntervalModel
    edges: list[EdgeInstructionModel]


class GridBoundsModel(BaseModel):
    x_min: float
    x_max: float
    y_min: float
    y_max: float


class DensityResponse(BaseModel):
    bounds: GridBoundsModel
    width: int
    height: int
    bandwidth: float
    values: str = Field(description="base64 row-major float32 grid, height*width cells")

    @classmethod
    def from_grid(cls, grid: DensityGrid) -> "DensityResponse":
        payload = np.ascontiguousarray(grid.values, dtype=np.float32).tobytes()
        return cls(
            bounds=GridBoundsModel(
                x_min=grid.bounds.x_min,
                x_max=grid.bounds.x_max,
                y_min=grid.bounds.y_min,
                y_max=grid.bounds.y_max,
            ),
            width=grid.width,
            height=grid.height,
            bandwidth=grid.bandwidth,
            values=base64.b64encode(payload).decode("ascii"),
        )

    def decode_values(self) -> np.ndarray:
        flat = np.frombuffer(base64.b64decode(self.values), dtype=np.float32)
        return flat.reshape(self.height, self.width)


class MobilityEntryModel(BaseModel):
    node_id: str
    label: str
    length: float

    @classmethod
    def from_score(cls, score: MobilityScore) -> "MobilityEntryModel":
        return cls(node_id=score.node_id, label=score.label, length=score.length)


class MobilityResponse(BaseModel):
    window: IntervalModel
    ranking: list[MobilityEntryModel]
    default_locked: list[str]
    mean_length: float


class GuidanceIntervalModel(BaseModel):
    start: float
    end: float

    @classmethod
    def from_guidance(cls, g: GuidanceInterval) -> "GuidanceIntervalModel":
        return cls(start=g.interval.start, end=g.interval.end)


class GuidanceResponse(BaseModel):
    locked: list[str]
    padding: float
    intervals: list[GuidanceIntervalModel]


class TimelineBinModel(BaseModel):
    start: float
    end: float
    nodes_alive: int
    edges_alive: int

    @classmethod
    def from_bin(cls, b: TimelineBin) -> "TimelineBinModel":
        return cls(start=b.start, end=b.end, nodes_alive=b.nodes_alive, edges_alive=b.edges_alive)


class TimelineResponse(BaseModel):
    extent: IntervalModel | None
    bins: list[TimelineBinModel]
    breakpoint_count: int

    @classmethod
    def from_series(
        cls, series: TimelineSeries, bins: list[TimelineBin], extent: Interval | None
    ) -> "TimelineResponse":
        return cls(
            extent=IntervalModel.from_interval(extent) if extent else None,
            bins=[TimelineBinModel.from_bin(b) for b in bins],
            breakpoint_count=len(series.breakpoints),
        )


class ViewParamsModel(BaseModel):
    samples_per_segment: int = 3
    bandwidth: float = 1.0
    grid_width: int = 256
    grid_height: int = 256
    timeline_bins: int = 200


class SessionModel(BaseModel):
    version: int
    window: IntervalModel
    locked: list[str]
    params: ViewParamsModel


class SessionUpdate(BaseModel):
    """PUT body; omitted fields keep their current value."""

    window: IntervalModel | None = None
    locked: list[str] | None = None
    params: ViewParamsModel | None = None


class ErrorResponse(BaseModel):
    detail: str


class AnalyzeReport(BaseModel):
    """cli analyze output: the service's analytics bundled for scripts."""

    graph: str
    window: IntervalModel
    mobility: MobilityResponse
    guidance: GuidanceResponse
    timeline_breakpoints: int
    equivalent_timeslices: int


def graph_meta(graph: TemporalGraph, timeslices: int) -> MetaResponse:
    return MetaResponse(
        extent=IntervalModel.from_interval(graph.extent) if graph.extent else None,
        node_count=len(graph.nodes),
        edge_count=len(graph.edges),
        equivalent_timeslices=timeslices,
    )
