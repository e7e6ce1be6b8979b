"""Planar circles, annuli, and internal tangency.

A point z = (x1, x2, r) with r > 0 is identified with the circle of center
(x1, x2) and radius r.  Two circles are internally tangent exactly when the
tangency defect of the difference point vanishes, and near-tangency is
quantified by the pair (t, defect) with t the 3D parameter distance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curve import Point3, tangency_defect

# Region where all quantitative circle estimates are stated: centers within
# 1/4 of the origin, radii in [1/2, 2].
BASE_CENTER_BOUND = 0.25
BASE_RADIUS_LO = 0.5
BASE_RADIUS_HI = 2.0


@dataclass(frozen=True)
class Circle:
    cx: float
    cy: float
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.cx) and math.isfinite(self.cy) and math.isfinite(self.radius)):
            raise ValueError("non-finite circle data")
        if self.radius <= 0:
            raise ValueError(f"radius must be positive, got {self.radius}")

    @property
    def center(self) -> tuple[float, float]:
        return (self.cx, self.cy)

    def point_at(self, angle: float) -> tuple[float, float]:
        return (self.cx + self.radius * math.cos(angle), self.cy + self.radius * math.sin(angle))

    def to_point(self) -> Point3:
        return Point3(self.cx, self.cy, self.radius)

    def csv_row(self) -> str:
        return f"{self.cx!r},{self.cy!r},{self.radius!r}"

    @classmethod
    def from_csv_row(cls, row: str) -> "Circle":
        a, b, c = (float(t) for t in row.split(","))
        return cls(a, b, c)


def circle_of(z: Point3) -> Circle:
    return Circle(z.x1, z.x2, z.r)


def in_base_region(z: Point3) -> bool:
    """Centers within 1/4 of the origin and radii in [1/2, 2]."""
    return (
        math.hypot(z.x1, z.x2) <= BASE_CENTER_BOUND
        and BASE_RADIUS_LO <= z.r <= BASE_RADIUS_HI
    )


@dataclass(frozen=True)
class IncidenceParams:
    """t: 3D parameter distance; defect: | |x1-x2| - |r1-r2| |."""

    t: float
    delta_prime: float


def incidence_params(z1: Point3, z2: Point3) -> IncidenceParams:
    if z1 == z2:
        raise ValueError("incidence parameters undefined for identical points")
    diff = z1 - z2
    return IncidenceParams(t=diff.norm(), delta_prime=tangency_defect(diff))


def internally_tangent(c1: Circle, c2: Circle, tol: float) -> bool:
    """True iff the tangency defect is at most tol (tol = delta recovers the
    delta-incidence predicate)."""
    if tol < 0:
        raise ValueError("tolerance must be nonnegative")
    return tangency_defect(c1.to_point() - c2.to_point()) <= tol


def internal_tangency_point(c1: Circle, c2: Circle) -> tuple[float, float]:
    """Predicted tangency location: c1's center pushed by sgn(r1-r2)*r1 toward c2.

    All intersection points of the thin annuli around two near-internally-
    tangent circles cluster at this point.
    """
    dx, dy = c2.cx - c1.cx, c2.cy - c1.cy
    dist = math.hypot(dx, dy)
    if dist == 0.0:
        raise ValueError("tangency point undefined for coincident centers")
    if c1.radius == c2.radius:
        raise ValueError("tangency point undefined for equal radii (sign ambiguous)")
    sign = 1.0 if c1.radius > c2.radius else -1.0
    scale = sign * c1.radius / dist
    return (c1.cx + scale * dx, c1.cy + scale * dy)


def annulus_intersection_samples(
    c1: Circle,
    c2: Circle,
    delta: float,
    n: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """n uniform samples of the delta-annulus of c1, kept if also in c2's.

    Sampling is uniform in (angle, radial offset), which is area-uniform up to
    O(delta/radius); this is the brute-force oracle for containment claims.
    Returns an (k, 2) array, possibly empty.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if n < 1:
        raise ValueError("need at least one sample")
    angles = rng.uniform(0.0, 2.0 * math.pi, n)
    offsets = rng.uniform(-delta, delta, n)
    px = c1.cx + (c1.radius + offsets) * np.cos(angles)
    py = c1.cy + (c1.radius + offsets) * np.sin(angles)
    d2 = np.hypot(px - c2.cx, py - c2.cy)
    keep = np.abs(d2 - c2.radius) <= delta
    return np.column_stack([px[keep], py[keep]])


def annulus_oracle_count(c1: Circle, delta: float, oversampling: int = 8) -> int:
    """Sample count resolving features of width delta on c1's annulus."""
    return max(16, int(math.ceil(2.0 * math.pi * c1.radius / delta)) * oversampling)
