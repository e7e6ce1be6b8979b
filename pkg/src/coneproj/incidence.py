"""Multiplicity functions and incidence counting for circle/wave families.

The multiplicity of a planar point w under a cloud is the total weight of
parameters whose circle (or wave graph) passes within delta of w.  The
heavier operations stack these queries into deterministic grids and compare
incomparable-rectangle counts against an explicit bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .circles import Circle, circle_of
from .clouds import BipartitePair, WeightedCloud
from .curve import FULL_CIRCLE, Point3, ThetaInterval, project_points
from .rects import (
    DEFAULT_TANGENCY_SCALE,
    ArcRect,
    max_incomparable_family,
    rect_from_incident_pair,
    tangent_mass,
)

TWO_PI = 2.0 * math.pi


def _ordered_sum(weights: np.ndarray, idx: np.ndarray) -> float:
    """Sum selected weights in ascending index order.

    Both the brute-force path and the indexed fast path reduce through this
    helper, so their floating-point results are identical bit for bit.
    """
    return float(weights[np.sort(idx)].sum())


class CircleIndex:
    """Spatial index over circle parameters for annulus membership queries.

    A circle can cover w only if |w - center| lies in [r_min - delta,
    r_max + delta]; a center KD-tree prunes to that disk before the exact
    annulus test.
    """

    def __init__(self, cloud: WeightedCloud):
        self.cloud = cloud
        self.tree = cKDTree(cloud.centers)
        self.r_min = float(cloud.radii.min())
        self.r_max = float(cloud.radii.max())

    def multiplicity(self, w: tuple[float, float], delta: float) -> float:
        cand = np.asarray(
            self.tree.query_ball_point([w[0], w[1]], self.r_max + delta, workers=1),
            dtype=int,
        )
        if cand.size == 0:
            return 0.0
        pts = self.cloud.points[cand]
        dist = np.hypot(w[0] - pts[:, 0], w[1] - pts[:, 1])
        hit = np.abs(dist - pts[:, 2]) <= delta
        return _ordered_sum(self.cloud.weights, cand[hit])


def circle_multiplicity(
    w: tuple[float, float],
    cloud: WeightedCloud,
    delta: float,
    index: CircleIndex | None = None,
) -> float:
    """Weight of parameters z' whose circle's delta-annulus covers w."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    if index is not None:
        return index.multiplicity(w, delta)
    dist = np.hypot(w[0] - cloud.points[:, 0], w[1] - cloud.points[:, 1])
    hit = np.abs(dist - cloud.points[:, 2]) <= delta
    return _ordered_sum(cloud.weights, np.flatnonzero(hit))


def wave_multiplicity(w: tuple[float, float], cloud: WeightedCloud, delta: float) -> float:
    """Weight of parameters z' whose wave graph passes within delta of w."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    vals = project_points(w[0], cloud.points)
    hit = np.abs(vals - w[1]) <= delta
    return _ordered_sum(cloud.weights, np.flatnonzero(hit))


def circle_multiplicity_many(ws: np.ndarray, cloud: WeightedCloud, delta: float) -> np.ndarray:
    """Vectorized circle multiplicity over an (M, 2) array of query points."""
    out = np.empty(ws.shape[0])
    step = max(1, int(4_000_000 / max(cloud.size, 1)))
    cx, cy, rad = cloud.points[:, 0], cloud.points[:, 1], cloud.points[:, 2]
    for i in range(0, ws.shape[0], step):
        block = ws[i : i + step]
        dist = np.hypot(block[:, 0, None] - cx[None, :], block[:, 1, None] - cy[None, :])
        hit = np.abs(dist - rad[None, :]) <= delta
        out[i : i + step] = hit @ cloud.weights
    return out


def high_multiplicity_fraction(
    z: Point3,
    cloud: WeightedCloud,
    delta: float,
    threshold: float,
    family: str = "circle",
    window: ThetaInterval | None = None,
    spacing: float | None = None,
) -> float:
    """Fraction of z's delta-neighborhood where multiplicity >= threshold.

    The neighborhood (annulus for circles, vertical delta-band of the wave
    graph for waves) is sampled on a deterministic arc-parameter x offset grid
    with the given spacing (default delta/4), and the multiplicity is
    evaluated at every node.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    spacing = delta / 4.0 if spacing is None else spacing
    n_off = max(3, int(round(2.0 * delta / spacing)) + 1)
    offsets = np.linspace(-delta, delta, n_off)
    if family == "circle":
        c = circle_of(z)
        n_ang = max(8, int(math.ceil(TWO_PI * c.radius / spacing)))
        angles = (np.arange(n_ang) + 0.5) * (TWO_PI / n_ang)
        ux, uy = np.cos(angles), np.sin(angles)
        rad = c.radius + offsets
        px = c.cx + rad[None, :] * ux[:, None]
        py = c.cy + rad[None, :] * uy[:, None]
        nodes = np.column_stack([px.ravel(), py.ravel()])
        mult = circle_multiplicity_many(nodes, cloud, delta)
        return float(np.mean(mult >= threshold))
    if family == "wave":
        win = (window or FULL_CIRCLE).half()
        length = win.length
        n_col = max(8, int(math.ceil(length / spacing)))
        thetas = win.lo + (np.arange(n_col) + 0.5) * (length / n_col)
        hits = 0
        total = 0
        step = max(1, int(4_000_000 / max(cloud.size * n_off, 1)))
        for i in range(0, n_col, step):
            block = thetas[i : i + step]
            cth, sth = np.cos(block), np.sin(block)
            base = (z.x1 * cth + z.x2 * sth + z.r) / math.sqrt(2.0)
            # cloud projections at each block angle: (k, N)
            vals = (
                cloud.points[None, :, 0] * cth[:, None]
                + cloud.points[None, :, 1] * sth[:, None]
                + cloud.points[None, :, 2]
            ) / math.sqrt(2.0)
            targets = base[:, None] + offsets[None, :]  # (k, n_off)
            hit = (
                np.abs(vals[:, None, :] - targets[:, :, None]) <= delta
            )  # (k, n_off, N)
            mult = hit @ cloud.weights
            hits += int(np.count_nonzero(mult >= threshold))
            total += mult.size
        return hits / total
    raise ValueError(f"unknown family {family!r}")


# -- incomparable-rectangle counting -------------------------------------------


def incident_cross_pairs(pair: BipartitePair, delta: float) -> list[tuple[int, int]]:
    """Indices (i, j) of delta-incident pairs w_i in W, b_j in B."""
    w, b = pair.w.points, pair.b.points
    planar = np.hypot(
        w[:, 0, None] - b[None, :, 0], w[:, 1, None] - b[None, :, 1]
    )
    defect = np.abs(planar - np.abs(w[:, 2, None] - b[None, :, 2]))
    ii, jj = np.nonzero(defect <= delta)
    return list(zip(ii.tolist(), jj.tolist()))


def wolff_family(
    pair: BipartitePair,
    delta: float,
    m: float,
    n: float,
    scale: float = DEFAULT_TANGENCY_SCALE,
) -> list[ArcRect]:
    """Maximal incomparable family of candidate tangency rectangles whose
    tangent masses reach (m, n).

    Candidates come from delta-incident cross pairs; all rectangles share the
    pair's bipartite t so comparability is defined across them.
    """
    rects: list[ArcRect] = []
    for i, j in incident_cross_pairs(pair, delta):
        c1 = Circle(*pair.w.points[i])
        c2 = Circle(*pair.b.points[j])
        try:
            rects.append(rect_from_incident_pair(c1, c2, delta, t=pair.t))
        except ValueError:
            continue
    typed = [
        r
        for r in rects
        if tangent_mass(r, pair.w, scale) >= m and tangent_mass(r, pair.b, scale) >= n
    ]
    return max_incomparable_family(typed, scale)


def wolff_bound(
    pair: BipartitePair, delta: float, m: float, n: float, eps: float, c_eps: float
) -> float:
    mu_w = pair.w.total_mass()
    mu_b = pair.b.total_mass()
    return c_eps * (m * n * delta) ** (-eps) * (
        (mu_w * mu_b / (m * n)) ** 0.75 + mu_w / m + mu_b / n
    )


def wolff_bound_ratio(
    pair: BipartitePair,
    delta: float,
    m: float,
    n: float,
    eps: float = 0.05,
    c_eps: float = 1.0,
    scale: float = DEFAULT_TANGENCY_SCALE,
) -> float:
    """Size of the incomparable family divided by the incidence bound."""
    if not (0.0 < delta <= pair.t < 1.0):
        raise ValueError(f"need 0 < delta <= t < 1, got delta={delta}, t={pair.t}")
    if m <= 0 or n <= 0:
        raise ValueError("type thresholds must be positive")
    family = wolff_family(pair, delta, m, n, scale)
    return len(family) / wolff_bound(pair, delta, m, n, eps, c_eps)


# -- exact double counting ------------------------------------------------------


def _as_weights(mu) -> np.ndarray:
    if isinstance(mu, WeightedCloud):
        return mu.weights
    return np.asarray(mu, dtype=float)


def double_count_check(pairs, mu1, mu2, c1: float, c2: float) -> bool:
    """Exact two-sided fiber count on a finite incidence relation.

    pairs is an explicit list of (i, j); mu1 and mu2 are weight arrays (or
    clouds) over the two index sets.  Requires every left element's fiber to
    have mu2-mass >= c2 and every right element's fiber to have mu1-mass
    <= c1; then checks mu2(pi2) >= (c2/c1) * mu1(pi1).
    """
    w1, w2 = _as_weights(mu1), _as_weights(mu2)
    pairs = list(pairs)
    if not pairs:
        return True
    left = sorted({i for i, _ in pairs})
    right = sorted({j for _, j in pairs})
    fiber2 = {i: 0.0 for i in left}
    fiber1 = {j: 0.0 for j in right}
    seen = set()
    for i, j in pairs:
        if (i, j) in seen:
            continue
        seen.add((i, j))
        fiber2[i] += float(w2[j])
        fiber1[j] += float(w1[i])
    for i in left:
        if fiber2[i] < c2:
            raise ValueError(f"left element {i} has fiber mass {fiber2[i]} < c2 = {c2}")
    for j in right:
        if fiber1[j] > c1:
            raise ValueError(f"right element {j} has fiber mass {fiber1[j]} > c1 = {c1}")
    mass1 = float(sum(w1[i] for i in left))
    mass2 = float(sum(w2[j] for j in right))
    return mass2 >= (c2 / c1) * mass1 - 1e-12 * max(1.0, abs(mass2))
