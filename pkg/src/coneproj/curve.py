"""Closed-form geometry of the slanted-circle projection family.

The direction family is ``g(theta) = (cos theta, sin theta, 1)/sqrt(2)``, a
unit vector sweeping the 45-degree cone around the vertical axis.  For a
point ``z = (x1, x2, r)`` the scalar projection onto ``span{g(theta)}`` is

    project(theta, z) = (x1 cos theta + x2 sin theta + r) / sqrt(2)
                      = A cos(theta - phase) + r/sqrt(2),

with amplitude ``A = |x|/sqrt(2)`` and phase the polar angle of ``x``.
Every operation here (windowed minima, sublevel sets, zero counts) reduces
to that amplitude/phase form and is evaluated analytically; grid searches
exist only as oracles in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Point3:
    """A point z = (x1, x2, r); doubles as circle data S((x1, x2), r) for r > 0."""

    x1: float
    x2: float
    r: float

    def __post_init__(self):
        for v in (self.x1, self.x2, self.r):
            if not math.isfinite(v):
                raise ValueError(f"non-finite coordinate in Point3: {(self.x1, self.x2, self.r)}")

    def __sub__(self, other: "Point3") -> "Point3":
        return Point3(self.x1 - other.x1, self.x2 - other.x2, self.r - other.r)

    def __add__(self, other: "Point3") -> "Point3":
        return Point3(self.x1 + other.x1, self.x2 + other.x2, self.r + other.r)

    def planar_norm(self) -> float:
        """|x| = sqrt(x1^2 + x2^2)."""
        return math.hypot(self.x1, self.x2)

    def norm(self) -> float:
        return math.sqrt(self.x1 * self.x1 + self.x2 * self.x2 + self.r * self.r)

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.r], dtype=float)

    def csv_row(self) -> str:
        return f"{self.x1!r},{self.x2!r},{self.r!r}"

    @classmethod
    def from_csv_row(cls, row: str) -> "Point3":
        a, b, c = (float(t) for t in row.split(","))
        return cls(a, b, c)


@dataclass(frozen=True)
class ThetaInterval:
    """A closed parameter window [lo, hi] inside [0, 2*pi].

    Windows constructed directly are restricted to length <= pi (the short
    regime every windowed estimate assumes).  ``double()`` may produce longer
    clipped windows and marks them ``wide``; the full circle is its own
    distinguished variant with wrap-around membership.
    """

    lo: float
    hi: float
    full: bool = False
    wide: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.full:
            object.__setattr__(self, "lo", 0.0)
            object.__setattr__(self, "hi", TWO_PI)
            return
        if not (0.0 <= self.lo < self.hi <= TWO_PI):
            raise ValueError(f"need 0 <= lo < hi <= 2*pi, got [{self.lo}, {self.hi}]")
        if not self.wide and self.hi - self.lo > math.pi + 1e-12:
            raise ValueError(f"window longer than pi: [{self.lo}, {self.hi}]")

    @classmethod
    def full_circle(cls) -> "ThetaInterval":
        return cls(0.0, TWO_PI, full=True)

    @property
    def length(self) -> float:
        return TWO_PI if self.full else self.hi - self.lo

    @property
    def center(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def half(self) -> "ThetaInterval":
        """Concentric window of half the length."""
        if self.full:
            return self
        c, q = self.center, 0.25 * self.length
        return ThetaInterval(c - q, c + q)

    def double(self) -> "ThetaInterval":
        """Concentric window of double the length, clipped to [0, 2*pi]."""
        if self.full:
            return self
        c, l = self.center, self.length
        return ThetaInterval(max(0.0, c - l), min(TWO_PI, c + l), wide=True)

    def contains(self, theta: float) -> bool:
        if self.full:
            return True
        t = theta % TWO_PI
        return self.lo <= t <= self.hi or self.lo <= t + TWO_PI <= self.hi

    def grid(self, n: int) -> np.ndarray:
        """n evenly spaced sample angles (full circle: periodic, no endpoint)."""
        if self.full:
            return np.linspace(0.0, TWO_PI, n, endpoint=False)
        return np.linspace(self.lo, self.hi, n)

    def csv_row(self) -> str:
        return f"{self.lo!r},{self.hi!r}"


FULL_CIRCLE = ThetaInterval.full_circle()


@dataclass(frozen=True)
class IntervalSet:
    """Ordered disjoint closed subintervals of [0, 2*pi]."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        prev_hi = -math.inf
        for lo, hi in self.intervals:
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise ValueError(f"bad interval ({lo}, {hi})")
            if lo < prev_hi:
                raise ValueError("intervals overlap or are unsorted")
            prev_hi = hi

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    @classmethod
    def from_intervals(cls, raw) -> "IntervalSet":
        """Sort and merge touching/overlapping intervals."""
        items = sorted((float(a), float(b)) for a, b in raw if a <= b)
        merged: list[list[float]] = []
        for lo, hi in items:
            if merged and lo <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], hi)
            else:
                merged.append([lo, hi])
        return cls(tuple((a, b) for a, b in merged))

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def is_empty(self) -> bool:
        return not self.intervals

    def total_length(self) -> float:
        return sum(hi - lo for lo, hi in self.intervals)

    def span(self) -> tuple[float, float]:
        if not self.intervals:
            raise ValueError("empty interval set has no span")
        return self.intervals[0][0], self.intervals[-1][1]

    def csv_rows(self) -> list[str]:
        return [f"{lo!r},{hi!r}" for lo, hi in self.intervals]


# -- direction family ---------------------------------------------------------


def direction(theta: float) -> np.ndarray:
    """Unit direction g(theta) = (cos theta, sin theta, 1)/sqrt(2)."""
    return np.array([math.cos(theta), math.sin(theta), 1.0]) / SQRT2


def direction_deriv(theta: float) -> np.ndarray:
    """d/dtheta of the direction: (-sin theta, cos theta, 0)/sqrt(2)."""
    return np.array([-math.sin(theta), math.cos(theta), 0.0]) / SQRT2


def normal_axis(theta: float) -> Point3:
    """Cross product direction x direction', spanning the kernel line of the
    plane projection at theta: -(cos theta, sin theta, -1)/2."""
    return Point3(-0.5 * math.cos(theta), -0.5 * math.sin(theta), 0.5)


def project(theta: float, z: Point3) -> float:
    """Scalar projection (x1 cos t + x2 sin t + r)/sqrt(2)."""
    return (z.x1 * math.cos(theta) + z.x2 * math.sin(theta) + z.r) / SQRT2


def project_flat(theta: float, z: Point3) -> float:
    """Degenerate control family (cos t, sin t, 0): drops the r coordinate."""
    return z.x1 * math.cos(theta) + z.x2 * math.sin(theta)


def project_points(theta: float, points: np.ndarray, curve: str = "slant") -> np.ndarray:
    """Vectorized projection of an (N, 3) array at a fixed angle."""
    c, s = math.cos(theta), math.sin(theta)
    if curve == "slant":
        return (points[:, 0] * c + points[:, 1] * s + points[:, 2]) / SQRT2
    if curve == "flat":
        return points[:, 0] * c + points[:, 1] * s
    raise ValueError(f"unknown curve {curve!r}")


def plane_proj_norm(theta: float, z: Point3) -> float:
    """sqrt((g.z)^2 + (g'.z)^2): size of z's component in the moving plane
    spanned by the direction and its derivative."""
    a = project(theta, z)
    b = (-z.x1 * math.sin(theta) + z.x2 * math.cos(theta)) / SQRT2
    return math.hypot(a, b)


# -- tangency quantities ------------------------------------------------------


def tangency_defect(z: Point3) -> float:
    """| |x| - |r| |: distance-like defect vanishing exactly on the cone |x| = |r|."""
    return abs(z.planar_norm() - abs(z.r))


def _window_min_candidates(window: ThetaInterval, phi: float, want_cos: float) -> list[float]:
    """Angles where a sinusoid with phase phi can attain its window minimum.

    want_cos = -1 when the cos coefficient is positive (minimize cos), +1 when
    negative.  Endpoints are always candidates; the unconstrained minimizer is
    added whenever one of its 2*pi shifts lies in the window.
    """
    cands = [window.lo, window.hi]
    target = (phi + math.pi) % TWO_PI if want_cos < 0 else phi % TWO_PI
    for shift in (-TWO_PI, 0.0, TWO_PI):
        t = target + shift
        if window.lo <= t <= window.hi:
            cands.append(t)
    return cands


def tangency_parameter(z: Point3, window: ThetaInterval = FULL_CIRCLE) -> float:
    """Minimum of plane_proj_norm over the window, computed analytically.

    2 * plane_proj_norm(theta, z)^2 = |x|^2 + r^2 + 2 r |x| cos(theta - phase),
    so the minimizer is the clamped extremum of a single cosine.  Over the full
    circle the value is | |x| - |r| | / sqrt(2) exactly.
    """
    big_r = z.planar_norm()
    r = z.r
    if big_r == 0.0 and r == 0.0:
        return 0.0
    if window.full:
        return abs(big_r - abs(r)) / SQRT2
    if big_r == 0.0 or r == 0.0:
        return math.sqrt(big_r * big_r + r * r) / SQRT2
    phi = math.atan2(z.x2, z.x1)
    want = -1.0 if r > 0 else 1.0

    def val(theta: float) -> float:
        q = big_r * big_r + r * r + 2.0 * r * big_r * math.cos(theta - phi)
        return math.sqrt(max(q, 0.0) / 2.0)

    best = math.inf
    for theta in _window_min_candidates(window, phi, want):
        v = val(theta)
        if v < best:
            best = v
    return best


def min_projection_angle(z: Point3) -> float:
    """Angle in [0, 2*pi) where plane_proj_norm attains its global minimum
    (a zero of theta -> g'(theta).z).  Undefined direction falls back to 0."""
    big_r = z.planar_norm()
    if big_r == 0.0:
        return 0.0
    phi = math.atan2(z.x2, z.x1)
    if z.r > 0:
        return (phi + math.pi) % TWO_PI
    return phi % TWO_PI


# -- sublevel sets and zeros --------------------------------------------------


def _shifted_overlap(lo: float, hi: float, wlo: float, whi: float) -> list[tuple[float, float]]:
    out = []
    for k in (-2 * TWO_PI, -TWO_PI, 0.0, TWO_PI, 2 * TWO_PI):
        a, b = lo + k, hi + k
        ov_lo, ov_hi = max(a, wlo), min(b, whi)
        if ov_lo <= ov_hi:
            out.append((ov_lo, ov_hi))
    return out


def sublevel_set(z: Point3, delta: float, window: ThetaInterval) -> IntervalSet:
    """{theta in window/2 : |project(theta, z)| <= delta}, in closed form.

    The condition reads |R cos(theta - phase) + r| <= sqrt(2)*delta with
    R = |x|; inverting the cosine yields at most two arcs per period, which
    are intersected with the half window.  At most two components whenever
    the window is shorter than the full circle.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    half = window.half()
    wlo, whi = (0.0, TWO_PI) if half.full else (half.lo, half.hi)
    big_r = z.planar_norm()
    bound = SQRT2 * delta
    if big_r == 0.0:
        if abs(z.r) <= bound:
            return IntervalSet(((wlo, whi),))
        return IntervalSet.empty()
    lo_c = max((-bound - z.r) / big_r, -1.0)
    hi_c = min((bound - z.r) / big_r, 1.0)
    if lo_c > hi_c:
        return IntervalSet.empty()
    phi = math.atan2(z.x2, z.x1)
    if lo_c <= -1.0 and hi_c >= 1.0:
        return IntervalSet(((wlo, whi),))
    alpha = math.acos(hi_c)
    beta = math.acos(lo_c)
    if hi_c >= 1.0:
        arcs = [(-beta, beta)]
    elif lo_c <= -1.0:
        arcs = [(alpha, TWO_PI - alpha)]
    else:
        arcs = [(alpha, beta), (-beta, -alpha)]
    pieces = []
    for a, b in arcs:
        pieces.extend(_shifted_overlap(a + phi, b + phi, wlo, whi))
    return IntervalSet.from_intervals(pieces)


def projection_zero_count(z: Point3, window: ThetaInterval) -> int:
    """Exact number of zeros of theta -> project(theta, z) on the window."""
    big_r = z.planar_norm()
    if big_r == 0.0 and z.r == 0.0:
        raise ValueError("zero count undefined for z = 0 (identically zero)")
    if big_r == 0.0:
        return 0
    c = -z.r / big_r
    if abs(c) > 1.0:
        return 0
    phi = math.atan2(z.x2, z.x1)
    alpha = math.acos(c)
    roots = {(phi + alpha) % TWO_PI}
    other = (phi - alpha) % TWO_PI
    if all(abs(other - t) > 1e-12 and abs(abs(other - t) - TWO_PI) > 1e-12 for t in roots):
        roots.add(other)
    if window.full or window.length >= TWO_PI - 1e-12:
        return len(roots)
    count = 0
    for root in roots:
        for shift in (-TWO_PI, 0.0, TWO_PI):
            if window.lo <= root + shift <= window.hi:
                count += 1
                break
    return count


# -- sine waves ----------------------------------------------------------------


@dataclass(frozen=True)
class SineWave:
    """The graph theta -> project(theta, z), as amplitude/phase data."""

    origin: Point3

    @property
    def amplitude(self) -> float:
        return self.origin.planar_norm() / SQRT2

    @property
    def phase(self) -> float:
        return math.atan2(self.origin.x2, self.origin.x1)

    @property
    def offset(self) -> float:
        return self.origin.r / SQRT2

    def value(self, theta: float) -> float:
        return self.amplitude * math.cos(theta - self.phase) + self.offset

    def values(self, thetas: np.ndarray) -> np.ndarray:
        return self.amplitude * np.cos(thetas - self.phase) + self.offset


def in_wave_neighborhood(z: Point3, delta: float, w: tuple[float, float]) -> bool:
    """Membership test for the delta-neighborhood of the wave of z.

    The caller is responsible for keeping w[0] inside the relevant theta
    window; this tests only the vertical distance to the graph.
    """
    return abs(project(w[0], z) - w[1]) <= delta
