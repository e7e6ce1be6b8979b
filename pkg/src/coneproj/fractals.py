"""Deterministic self-similar test sets with prescribed dimension.

The generator places N equal cells per used axis at contraction ratio
``ratio`` with strong separation (ratio * N <= 1/2), so box counts and ball
masses are exact at the construction scales and the box dimension of the
output equals the similarity dimension

    s = (#axes * log N) / log(1/ratio).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .clouds import WeightedCloud

AXES = ("x1", "x2", "r")

# Default placement frame, inscribed in the base region: |x| <= 0.25 and
# radii comfortably inside [1/2, 2].
DEFAULT_FRAME = {"x1": (-0.17, 0.17), "x2": (-0.17, 0.17), "r": (0.6, 1.9)}

MAX_POINTS = 10_000_000


@dataclass(frozen=True)
class IFSSpec:
    ratio: float
    maps_per_axis: int
    axes: tuple[str, ...]
    depth: int
    frame: dict = field(default_factory=lambda: dict(DEFAULT_FRAME))

    def __post_init__(self):
        if not (0.0 < self.ratio <= 0.5):
            raise ValueError(f"ratio must be in (0, 1/2], got {self.ratio}")
        if self.maps_per_axis not in (2, 3):
            raise ValueError("maps_per_axis must be 2 or 3")
        axes = tuple(self.axes)
        if not axes or len(set(axes)) != len(axes) or any(a not in AXES for a in axes):
            raise ValueError(f"axes must be a nonempty subset of {AXES}, got {axes}")
        object.__setattr__(self, "axes", axes)
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        frame = dict(DEFAULT_FRAME)
        frame.update(self.frame)
        for axis, (lo, hi) in frame.items():
            if axis not in AXES or not lo < hi:
                raise ValueError(f"bad frame entry {axis}: {(lo, hi)}")
        object.__setattr__(self, "frame", frame)
        if self.ratio * self.maps_per_axis > 0.5 + 1e-12:
            raise ValueError(
                f"strong separation needs ratio * maps <= 1/2, got {self.ratio * self.maps_per_axis}"
            )

    @property
    def similarity_dimension(self) -> float:
        return len(self.axes) * math.log(self.maps_per_axis) / math.log(1.0 / self.ratio)

    @property
    def point_count(self) -> int:
        return self.maps_per_axis ** (len(self.axes) * self.depth)

    def frame_size(self, axis: str) -> float:
        lo, hi = self.frame[axis]
        return hi - lo

    def meta(self) -> dict:
        return {
            "generator": "cantor",
            "ratio": repr(self.ratio),
            "maps_per_axis": str(self.maps_per_axis),
            "axes": ",".join(self.axes),
            "depth": str(self.depth),
            "similarity_dimension": repr(self.similarity_dimension),
        }


def ratio_for_dimension(s: float, n_axes: int, maps_per_axis: int = 2) -> float:
    """Contraction ratio giving similarity dimension s on n_axes axes."""
    if s <= 0:
        raise ValueError("dimension must be positive")
    ratio = math.exp(-n_axes * math.log(maps_per_axis) / s)
    if ratio * maps_per_axis > 0.5 + 1e-12:
        raise ValueError(
            f"dimension {s} on {n_axes} axes violates strong separation (ratio {ratio})"
        )
    return ratio


def _axis_centers(ratio: float, n_maps: int, depth: int) -> np.ndarray:
    """Cell centers of the depth-d iterate in [0, 1], branch-lexicographic."""
    offsets = np.array([k * (1.0 - ratio) / (n_maps - 1) for k in range(n_maps)])
    origins = np.array([0.0])
    scale = 1.0
    for _ in range(depth):
        origins = (origins[:, None] + offsets[None, :] * scale).ravel()
        scale *= ratio
    return origins + scale / 2.0


def generate_cantor(spec: IFSSpec) -> WeightedCloud:
    """Depth-d iterate as a uniformly weighted cloud in the target frame."""
    count = spec.point_count
    if count > MAX_POINTS:
        raise ValueError(f"point count {count} exceeds limit {MAX_POINTS}")
    unit = _axis_centers(spec.ratio, spec.maps_per_axis, spec.depth)
    columns = {}
    for axis in AXES:
        lo, hi = spec.frame[axis]
        if axis in spec.axes:
            columns[axis] = lo + (hi - lo) * unit
        else:
            columns[axis] = np.array([0.5 * (lo + hi)])
    grids = np.meshgrid(*(columns[a] for a in AXES), indexing="ij")
    points = np.column_stack([g.ravel() for g in grids])
    resolution = spec.ratio**spec.depth * max(spec.frame_size(a) for a in spec.axes)
    meta = spec.meta()
    if spec.depth >= 1:
        gap_unit = (1.0 - spec.ratio) / (spec.maps_per_axis - 1)
        min_gap = gap_unit * spec.ratio ** (spec.depth - 1) * min(
            spec.frame_size(a) for a in spec.axes
        )
        meta["min_gap"] = repr(min_gap)
    weights = np.full(points.shape[0], 1.0 / points.shape[0])
    return WeightedCloud(points=points, weights=weights, resolution=resolution, meta=meta)


def cone_cloud(n: int, seed: int) -> WeightedCloud:
    """n points with |x| = r exactly, radii spread over [1/2, 2].

    The planar norm is recomputed with the same hypot used by the tangency
    defect, so the defect is bit-exact zero.  Not contained in the base
    region (|x| = r >= 1/2 > 1/4); intended for projection-family tests only.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    ang = rng.uniform(0.0, 2.0 * math.pi, n)
    s = rng.uniform(0.5, 2.0, n)
    x1 = s * np.cos(ang)
    x2 = s * np.sin(ang)
    r = np.hypot(x1, x2)
    points = np.column_stack([x1, x2, r])
    return WeightedCloud(
        points=points,
        weights=np.full(n, 1.0 / n),
        meta={"generator": "cone", "seed": str(seed)},
    )


def frostman_estimate(cloud: WeightedCloud, scales) -> tuple[float, float]:
    """Fit max ball mass against radius: max_z mu(B(z, r)) ~ C * r^s.

    Returns (s_est, C_est).  Scales must sit at or above the cloud's
    resolution; below it the discrete cloud stops looking like its limit.
    """
    scales = sorted(float(s) for s in scales)
    if len(scales) < 3:
        raise ValueError("need at least 3 scales")
    if any(s <= 0 for s in scales):
        raise ValueError("scales must be positive")
    if cloud.resolution is not None and scales[0] < cloud.resolution:
        raise ValueError(
            f"scale {scales[0]} below cloud resolution {cloud.resolution}"
        )
    tree = cKDTree(cloud.points)
    max_masses = []
    for r in scales:
        neighbors = tree.query_ball_point(cloud.points, r, workers=1)
        best = max(float(cloud.weights[idx].sum()) for idx in neighbors)
        max_masses.append(best)
    slope, intercept = np.polyfit(np.log(scales), np.log(max_masses), 1)
    return float(slope), float(math.exp(intercept))
