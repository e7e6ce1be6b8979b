"""Arc rectangles: delta-neighborhoods of short circular arcs.

An arc rectangle with parameters (delta, t) is the delta-neighborhood of an
arc of length sqrt(delta/t) on a parent circle.  It is the canonical footprint
of the near-tangency of two delta-incident circles at parameter distance t:
both circles of such a pair pass within a few delta of every point of the
rectangle built at the predicted tangency location.

Comparability of two rectangles ("is there a single (C*delta, t)-rectangle
containing both?") is decided by a sound-but-conservative witness search: we
try candidate containers on each parent circle and on a least-squares circle
through both arcs, and check containment of boundary samples directly.  A
"True" therefore always exhibits a genuine container; exotic witnesses on
unrelated third circles may be missed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circles import Circle, incidence_params, internal_tangency_point
from .clouds import WeightedCloud

TWO_PI = 2.0 * math.pi

# Tangency scale constant: a circle is "tangent" to a rectangle when every
# sample of the rectangle's arc is within this multiple of delta from it.
DEFAULT_TANGENCY_SCALE = 4.0

# Interior sample count per arc; endpoint samples are always added.
ARC_SAMPLES = 33


@dataclass(frozen=True)
class ArcRect:
    """delta-neighborhood of the arc of length sqrt(delta/t) on ``parent``
    centered at angle ``anchor``."""

    parent: Circle
    anchor: float
    delta: float
    t: float

    def __post_init__(self):
        if not (0.0 < self.delta <= self.t <= 1.0):
            raise ValueError(f"need 0 < delta <= t <= 1, got delta={self.delta}, t={self.t}")
        if not math.isfinite(self.anchor):
            raise ValueError("non-finite anchor")
        object.__setattr__(self, "anchor", self.anchor % TWO_PI)

    @property
    def arc_half_angle(self) -> float:
        return math.sqrt(self.delta / self.t) / (2.0 * self.parent.radius)

    def arc_points(self, interior: int = ARC_SAMPLES) -> np.ndarray:
        """(interior + 2, 2) points along the arc midline, endpoints included."""
        h = self.arc_half_angle
        psi = np.linspace(self.anchor - h, self.anchor + h, interior + 2)
        return np.column_stack([
            self.parent.cx + self.parent.radius * np.cos(psi),
            self.parent.cy + self.parent.radius * np.sin(psi),
        ])

    def boundary_points(self, interior: int = ARC_SAMPLES) -> np.ndarray:
        """Samples of the inner and outer offset arcs (2*(interior+2), 2)."""
        h = self.arc_half_angle
        psi = np.linspace(self.anchor - h, self.anchor + h, interior + 2)
        rad = np.concatenate([
            np.full(psi.size, self.parent.radius - self.delta),
            np.full(psi.size, self.parent.radius + self.delta),
        ])
        psi2 = np.concatenate([psi, psi])
        return np.column_stack([
            self.parent.cx + rad * np.cos(psi2),
            self.parent.cy + rad * np.sin(psi2),
        ])

    def contains_point(self, p: tuple[float, float]) -> bool:
        d = _dist_to_arc(
            np.asarray([p], dtype=float),
            self.parent.cx,
            self.parent.cy,
            self.parent.radius,
            self.anchor,
            self.arc_half_angle,
        )[0]
        return d <= self.delta

    def csv_row(self) -> str:
        return (
            f"{self.parent.cx!r},{self.parent.cy!r},{self.parent.radius!r},"
            f"{self.anchor!r},{self.delta!r},{self.t!r}"
        )

    @classmethod
    def from_csv_row(cls, row: str) -> "ArcRect":
        cx, cy, r, anchor, delta, t = (float(v) for v in row.split(","))
        return cls(Circle(cx, cy, r), anchor, delta, t)


def _wrap_pi(a):
    """Wrap angles into [-pi, pi)."""
    return (a + math.pi) % TWO_PI - math.pi


def _dist_to_arc(points, cx, cy, radius, anchor, half_angle):
    """Euclidean distance from (k, 2) points to the arc of the given circle."""
    vx = points[:, 0] - cx
    vy = points[:, 1] - cy
    ang = np.arctan2(vy, vx)
    dphi = _wrap_pi(ang - anchor)
    on_arc = np.abs(dphi) <= half_angle
    d = np.empty(points.shape[0])
    d[on_arc] = np.abs(np.hypot(vx[on_arc], vy[on_arc]) - radius)
    if not np.all(on_arc):
        off = ~on_arc
        end = anchor + np.where(dphi[off] > 0, half_angle, -half_angle)
        ex = cx + radius * np.cos(end)
        ey = cy + radius * np.sin(end)
        d[off] = np.hypot(points[off, 0] - ex, points[off, 1] - ey)
    return d


def is_tangent(c: Circle, rect: ArcRect, scale: float = DEFAULT_TANGENCY_SCALE) -> bool:
    """True iff every arc sample of the rectangle lies within scale*delta of c."""
    if scale < 1.0:
        raise ValueError("tangency scale must be >= 1")
    pts = rect.arc_points()
    d = np.hypot(pts[:, 0] - c.cx, pts[:, 1] - c.cy)
    return bool(np.max(np.abs(d - c.radius)) <= scale * rect.delta)


def rect_from_incident_pair(
    c1: Circle,
    c2: Circle,
    delta: float,
    t: float | None = None,
) -> ArcRect:
    """The rectangle on c1 anchored at the predicted tangency point of a
    delta-incident pair.

    t defaults to the 3D parameter distance of the pair; a common family value
    may be passed instead so rectangles from many pairs share (delta, t).
    """
    params = incidence_params(c1.to_point(), c2.to_point())
    if params.delta_prime > delta:
        raise ValueError(
            f"pair is not delta-incident: defect {params.delta_prime} > delta {delta}"
        )
    t_use = params.t if t is None else t
    if t_use < delta:
        raise ValueError(f"pair distance {t_use} below delta {delta}")
    dx, dy = c2.cx - c1.cx, c2.cy - c1.cy
    dist = math.hypot(dx, dy)
    if dist == 0.0:
        raise ValueError("rectangle undefined for coincident centers")
    # sgn(r1 - r2); equal radii with distinct centers take the + orientation.
    sign = -1.0 if c1.radius < c2.radius else 1.0
    anchor = math.atan2(sign * dy, sign * dx)
    return ArcRect(c1, anchor, delta, t_use)


def _circ_mean(a: float, b: float) -> float:
    x = math.cos(a) + math.cos(b)
    y = math.sin(a) + math.sin(b)
    if x == 0.0 and y == 0.0:
        return a
    return math.atan2(y, x)


def _fit_circle(points: np.ndarray) -> tuple[float, float, float] | None:
    """Least-squares (Kasa) circle through the points, or None if degenerate."""
    a = np.column_stack([2.0 * points[:, 0], 2.0 * points[:, 1], np.ones(points.shape[0])])
    b = points[:, 0] ** 2 + points[:, 1] ** 2
    try:
        sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    except np.linalg.LinAlgError:
        return None
    cx, cy, c = sol
    r2 = c + cx * cx + cy * cy
    if not math.isfinite(r2) or r2 <= 0:
        return None
    r = math.sqrt(r2)
    if not (1e-6 < r < 1e6):
        return None
    return (float(cx), float(cy), r)


def _angle_from(cx: float, cy: float, p: np.ndarray) -> float:
    return math.atan2(float(p[1]) - cy, float(p[0]) - cx)


def comparable(r1: ArcRect, r2: ArcRect, scale: float = DEFAULT_TANGENCY_SCALE) -> bool:
    """Whether a single (scale*delta, t)-rectangle contains both rectangles.

    Candidate containers are anchored at the circular mean of the two arc
    midpoints, on each parent circle and on a least-squares circle through
    both arcs.  Containment of both rectangles' boundary samples in the
    candidate is checked directly, so a True verdict always exhibits an
    actual container.
    """
    if scale < 1.0:
        raise ValueError("scale must be >= 1")
    if abs(r1.delta - r2.delta) > 1e-12 or abs(r1.t - r2.t) > 1e-12:
        raise ValueError("comparability requires matching (delta, t)")
    # Canonical order, so the verdict is symmetric bit-for-bit.
    key = lambda r: (r.parent.cx, r.parent.cy, r.parent.radius, r.anchor)
    a, b = sorted((r1, r2), key=key)
    cdelta = scale * a.delta
    samples = np.vstack([a.boundary_points(), b.boundary_points()])
    mid_a = np.asarray(a.parent.point_at(a.anchor))
    mid_b = np.asarray(b.parent.point_at(b.anchor))

    def contained(cx: float, cy: float, radius: float) -> bool:
        anchor = _circ_mean(_angle_from(cx, cy, mid_a), _angle_from(cx, cy, mid_b))
        half = math.sqrt(cdelta / a.t) / (2.0 * radius)
        d = _dist_to_arc(samples, cx, cy, radius, anchor, half)
        return bool(np.max(d) <= cdelta)

    for parent in (a.parent, b.parent):
        if contained(parent.cx, parent.cy, parent.radius):
            return True
    fit = _fit_circle(np.vstack([a.arc_points(), b.arc_points()]))
    if fit is not None and contained(*fit):
        return True
    return False


def max_incomparable_family(
    rects: list[ArcRect],
    scale: float = DEFAULT_TANGENCY_SCALE,
) -> list[ArcRect]:
    """Greedy pass in input order keeping rectangles pairwise incomparable."""
    kept: list[ArcRect] = []
    for r in rects:
        if all(not comparable(r, k, scale) for k in kept):
            kept.append(r)
    return kept


def tangent_mass(rect: ArcRect, cloud: WeightedCloud, scale: float = DEFAULT_TANGENCY_SCALE) -> float:
    """Total weight of cloud points whose circle is tangent to the rectangle."""
    pts = rect.arc_points()
    d = np.hypot(
        pts[None, :, 0] - cloud.points[:, 0, None],
        pts[None, :, 1] - cloud.points[:, 1, None],
    )
    ok = np.all(np.abs(d - cloud.points[:, 2, None]) <= scale * rect.delta, axis=1)
    return float(cloud.weights[ok].sum())


def rect_type(
    rect: ArcRect,
    w_cloud: WeightedCloud,
    b_cloud: WeightedCloud,
    scale: float = DEFAULT_TANGENCY_SCALE,
) -> tuple[float, float]:
    """(mass of tangent circles from W, same from B)."""
    return (tangent_mass(rect, w_cloud, scale), tangent_mass(rect, b_cloud, scale))
