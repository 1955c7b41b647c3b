"""Age-weighted Gaussian kernel density over the projection plane.

The grid behind the contour map: every sampled trajectory point contributes
an isotropic Gaussian kernel whose weight shrinks linearly with age, so
regions where many recent points existed light up strongest.  The engine
emits the scalar grid only; contour extraction happens client-side.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import Interval, Point, TemporalGraph
from .sampling import clamp_diagnostics, sample_trajectory

DEFAULT_WEIGHT_FLOOR = 0.05
DEFAULT_GRID_SIZE = 256
PADDING_SIGMAS = 4.0


@dataclass(frozen=True)
class WeightedPoint:
    position: Point
    weight: float

    def __post_init__(self) -> None:
        if self.weight < 0:
            raise ValueError(f"weight must be >= 0, got {self.weight}")


@dataclass(frozen=True)
class GridBounds:
    x_min: float
    x_max: float
    y_min: float
    y_max: float


@dataclass(frozen=True)
class DensityGrid:
    bounds: GridBounds
    width: int
    height: int
    bandwidth: float
    values: np.ndarray  # row-major, shape (height, width), non-negative

    @property
    def cell_area(self) -> float:
        dx = (self.bounds.x_max - self.bounds.x_min) / self.width
        dy = (self.bounds.y_max - self.bounds.y_min) / self.height
        return dx * dy

    def total_mass(self) -> float:
        return float(self.values.sum()) * self.cell_area


def age_weight(norm_age: float, w_floor: float = DEFAULT_WEIGHT_FLOOR) -> float:
    """Density weight for a point of the given normalized age.

    Linear with a floor: the most recent points weigh 1, the oldest w_floor,
    so older points contribute less without vanishing entirely.
    """
    if norm_age < 0.0 or norm_age > 1.0:
        clamp_diagnostics.count += 1
        norm_age = min(1.0, max(0.0, norm_age))
    return w_floor + (1.0 - w_floor) * norm_age


def _padded_bounds(points: list[WeightedPoint], bandwidth: float) -> GridBounds:
    xs = [p.position[0] for p in points]
    ys = [p.position[1] for p in points]
    pad = PADDING_SIGMAS * bandwidth
    return GridBounds(min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad)


def density_grid(
    points: list[WeightedPoint],
    bandwidth: float,
    width: int = DEFAULT_GRID_SIZE,
    height: int = DEFAULT_GRID_SIZE,
    bounds: GridBounds | None = None,
) -> DensityGrid:
    """Weighted Gaussian KDE evaluated at the centers of a width x height grid.

    values[r][c] = sum_i w_i * exp(-||cell_rc - p_i||^2 / (2 sigma^2)) / (2 pi sigma^2)
    with sigma = bandwidth.  Bounds default to the data's bounding box padded
    by 4 sigma per side; explicit bounds must provide at least that padding.
    """
    if not points:
        raise ValueError("density_grid requires at least one point")
    if bandwidth <= 0:
        raise ValueError(f"bandwidth must be > 0, got {bandwidth}")
    if width < 2 or height < 2:
        raise ValueError(f"grid must be at least 2x2, got {width}x{height}")
    if bounds is None:
        bounds = _padded_bounds(points, bandwidth)
    else:
        data = _padded_bounds(points, bandwidth)
        if (
            bounds.x_min > data.x_min
            or bounds.x_max < data.x_max
            or bounds.y_min > data.y_min
            or bounds.y_max < data.y_max
        ):
            raise ValueError(
                "explicit bounds must pad the data bounding box by >= "
                f"{PADDING_SIGMAS} bandwidths per side"
            )

    px = np.array([p.position[0] for p in points], dtype=np.float64)
    py = np.array([p.position[1] for p in points], dtype=np.float64)
    w = np.array([p.weight for p in points], dtype=np.float64)

    dx = (bounds.x_max - bounds.x_min) / width
    dy = (bounds.y_max - bounds.y_min) / height
    cx = bounds.x_min + (np.arange(width) + 0.5) * dx
    cy = bounds.y_min + (np.arange(height) + 0.5) * dy

    inv_two_sigma_sq = 1.0 / (2.0 * bandwidth * bandwidth)
    # Separable kernel: one (points x width) and one (points x height) factor,
    # contracted over points with a matmul.  Exact (no truncation), and the
    # per-cell summation order is fixed by the contraction.
    kx = np.exp(-((cx[None, :] - px[:, None]) ** 2) * inv_two_sigma_sq)
    ky = np.exp(-((cy[None, :] - py[:, None]) ** 2) * inv_two_sigma_sq)
    values = (ky * w[:, None]).T @ kx
    values /= 2.0 * math.pi * bandwidth * bandwidth
    return DensityGrid(bounds=bounds, width=width, height=height, bandwidth=bandwidth, values=values)


def density_for_window(
    graph: TemporalGraph,
    window: Interval,
    samples_per_segment: int,
    bandwidth: float,
    width: int = DEFAULT_GRID_SIZE,
    height: int = DEFAULT_GRID_SIZE,
    w_floor: float = DEFAULT_WEIGHT_FLOOR,
    bounds: GridBounds | None = None,
) -> DensityGrid:
    """Sample every node intersecting the window and estimate their density.

    Uses the same sampling rate as the view so the map reflects exactly the
    points on screen; each point is weighted by its window-relative age.
    """
    points = weighted_points_for_window(graph, window, samples_per_segment, w_floor)
    return density_grid(points, bandwidth, width, height, bounds)


def weighted_points_for_window(
    graph: TemporalGraph,
    window: Interval,
    samples_per_segment: int,
    w_floor: float = DEFAULT_WEIGHT_FLOOR,
) -> list[WeightedPoint]:
    """The density input: every sampled point with its age-derived weight."""
    points: list[WeightedPoint] = []
    for node in graph.nodes.values():
        clipped = node.clip(window)
        if clipped is None or not clipped.trajectory:
            continue
        traj = sample_trajectory(node, window, samples_per_segment)
        points.extend(
            WeightedPoint(p.position, age_weight(p.norm_age, w_floor)) for p in traj.points
        )
    return points
