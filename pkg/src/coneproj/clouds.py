"""Weighted point clouds standing in for measures on R^3.

A cloud is a finite discrete probability measure sum w_i * delta_{z_i}.
Clouds generated from self-similar constructions carry their resolution
scale; checks at scales below it are meaningless and rejected downstream.
Clouds are treated as immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circles import BASE_CENTER_BOUND, BASE_RADIUS_HI, BASE_RADIUS_LO

WEIGHT_TOL = 1e-9


@dataclass
class WeightedCloud:
    points: np.ndarray
    weights: np.ndarray
    resolution: float | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.points = np.ascontiguousarray(np.asarray(self.points, dtype=float))
        self.weights = np.ascontiguousarray(np.asarray(self.weights, dtype=float))
        if self.points.ndim != 2 or self.points.shape[1] != 3:
            raise ValueError(f"points must be (N, 3), got {self.points.shape}")
        if self.weights.shape != (self.points.shape[0],):
            raise ValueError("weights must match point count")
        if self.points.shape[0] == 0:
            raise ValueError("empty cloud")
        if not np.all(np.isfinite(self.points)):
            raise ValueError("non-finite point coordinates")
        if not np.all(self.weights > 0):
            raise ValueError("weights must be positive")
        total = float(self.weights.sum())
        if abs(total - 1.0) > WEIGHT_TOL:
            raise ValueError(f"weights must sum to 1 (+-{WEIGHT_TOL}), got {total}")

    @property
    def size(self) -> int:
        return self.points.shape[0]

    @property
    def centers(self) -> np.ndarray:
        return self.points[:, :2]

    @property
    def radii(self) -> np.ndarray:
        return self.points[:, 2]

    def total_mass(self) -> float:
        return float(self.weights.sum())

    def in_base_region(self) -> bool:
        planar = np.hypot(self.points[:, 0], self.points[:, 1])
        return bool(
            np.all(planar <= BASE_CENTER_BOUND)
            and np.all(self.points[:, 2] >= BASE_RADIUS_LO)
            and np.all(self.points[:, 2] <= BASE_RADIUS_HI)
        )

    def diameter(self) -> float:
        """Max pairwise distance; O(N^2) in chunks, fine for the small clouds
        this is used on (bipartite halves)."""
        pts = self.points
        best = 0.0
        step = 512
        for i in range(0, pts.shape[0], step):
            block = pts[i : i + step]
            d2 = ((block[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
            best = max(best, float(d2.max()))
        return math.sqrt(best)

    def min_distance_to(self, other: "WeightedCloud") -> float:
        pts, qts = self.points, other.points
        best = math.inf
        step = 512
        for i in range(0, pts.shape[0], step):
            block = pts[i : i + step]
            d2 = ((block[:, None, :] - qts[None, :, :]) ** 2).sum(axis=2)
            best = min(best, float(d2.min()))
        return math.sqrt(best)

    def to_csv(self, path) -> None:
        lines = []
        for key in sorted(self.meta):
            lines.append(f"# {key}={self.meta[key]}")
        if self.resolution is not None:
            lines.append(f"# resolution={self.resolution!r}")
        lines.append("x1,x2,r,weight")
        for (x1, x2, r), w in zip(self.points, self.weights):
            lines.append(f"{x1!r},{x2!r},{r!r},{w!r}")
        with open(path, "w") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def from_csv(cls, path) -> "WeightedCloud":
        meta: dict = {}
        resolution = None
        rows = []
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                if line.startswith("#"):
                    body = line[1:].strip()
                    if "=" in body:
                        key, val = body.split("=", 1)
                        if key.strip() == "resolution":
                            resolution = float(val)
                        else:
                            meta[key.strip()] = val.strip()
                    continue
                if line.startswith("x1,"):
                    continue
                rows.append([float(v) for v in line.split(",")])
        arr = np.asarray(rows, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 4:
            raise ValueError(f"malformed cloud CSV {path}")
        return cls(points=arr[:, :3], weights=arr[:, 3], resolution=resolution, meta=meta)


def uniform_cloud(points: np.ndarray, resolution: float | None = None, meta: dict | None = None) -> WeightedCloud:
    points = np.asarray(points, dtype=float)
    n = points.shape[0]
    return WeightedCloud(
        points=points,
        weights=np.full(n, 1.0 / n),
        resolution=resolution,
        meta=meta or {},
    )


@dataclass(frozen=True)
class BipartitePair:
    """Two clouds W, B with max{diam(W), diam(B)} <= t <= dist(W, B)."""

    w: WeightedCloud
    b: WeightedCloud
    t: float

    def __post_init__(self):
        if self.t <= 0:
            raise ValueError("t must be positive")
        if not (self.w.in_base_region() and self.b.in_base_region()):
            raise ValueError("bipartite clouds must lie in the base region")
        dw, db = self.w.diameter(), self.b.diameter()
        if max(dw, db) > self.t:
            raise ValueError(f"diameters ({dw}, {db}) exceed t = {self.t}")
        dist = self.w.min_distance_to(self.b)
        if dist < self.t:
            raise ValueError(f"separation {dist} below t = {self.t}")
