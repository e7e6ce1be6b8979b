import math

import numpy as np
import pytest

from coneproj.curve import (
    FULL_CIRCLE,
    IntervalSet,
    Point3,
    SineWave,
    ThetaInterval,
    direction,
    direction_deriv,
    in_wave_neighborhood,
    min_projection_angle,
    normal_axis,
    plane_proj_norm,
    project,
    projection_zero_count,
    sublevel_set,
    tangency_defect,
    tangency_parameter,
)

SQRT2 = math.sqrt(2.0)
TWO_PI = 2.0 * math.pi


def rand_point(rng, scale=2.0):
    return Point3(*rng.uniform(-scale, scale, 3))


class TestPoint3:
    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            Point3(math.nan, 0.0, 0.0)
        with pytest.raises(ValueError):
            Point3(0.0, math.inf, 1.0)

    def test_csv_round_trip(self):
        z = Point3(0.1, -2.0, 1.5)
        assert Point3.from_csv_row(z.csv_row()) == z


class TestThetaInterval:
    def test_validation(self):
        with pytest.raises(ValueError):
            ThetaInterval(1.0, 0.5)
        with pytest.raises(ValueError):
            ThetaInterval(0.0, TWO_PI - 0.1)  # longer than pi
        with pytest.raises(ValueError):
            ThetaInterval(-0.1, 0.5)

    def test_half_and_double(self):
        j = ThetaInterval(1.0, 2.0)
        h = j.half()
        assert h.lo == pytest.approx(1.25) and h.hi == pytest.approx(1.75)
        d = j.double()
        assert d.lo == pytest.approx(0.5) and d.hi == pytest.approx(2.5)

    def test_double_clips(self):
        j = ThetaInterval(0.1, 0.5)
        assert j.double().lo == 0.0

    def test_full_circle_contains_everything(self):
        assert FULL_CIRCLE.contains(17.3)
        assert FULL_CIRCLE.half() is FULL_CIRCLE

    def test_contains_wraps(self):
        j = ThetaInterval(0.0, 1.0)
        assert j.contains(TWO_PI)  # 2*pi == 0
        assert not j.contains(2.0)


class TestIntervalSet:
    def test_merge(self):
        s = IntervalSet.from_intervals([(0.5, 1.0), (0.0, 0.5), (2.0, 3.0)])
        assert s.intervals == ((0.0, 1.0), (2.0, 3.0))

    def test_rejects_overlap(self):
        with pytest.raises(ValueError):
            IntervalSet(((0.0, 1.0), (0.5, 2.0)))


class TestProjection:
    def test_vertical_point_is_constant(self):
        z = Point3(0.0, 0.0, 1.0)
        for theta in (0.0, 1.234, 4.0):
            assert project(theta, z) == pytest.approx(1 / SQRT2, abs=1e-15)

    def test_axis_values(self):
        assert project(0.0, Point3(1, 0, 0)) == pytest.approx(1 / SQRT2)
        assert project(math.pi / 2, Point3(1, 0, 0)) == pytest.approx(0.0, abs=1e-16)

    def test_direction_is_unit(self):
        for theta in np.linspace(0, TWO_PI, 17):
            assert np.linalg.norm(direction(theta)) == pytest.approx(1.0)


class TestNormalAxis:
    def test_formula_at_zero_and_pi(self):
        e = normal_axis(0.0)
        assert (e.x1, e.x2, e.r) == pytest.approx((-0.5, 0.0, 0.5))
        e = normal_axis(math.pi)
        assert (e.x1, e.x2, e.r) == pytest.approx((0.5, 0.0, 0.5), abs=1e-15)

    def test_orthogonal_to_moving_plane(self):
        rng = np.random.default_rng(3)
        for theta in rng.uniform(0, TWO_PI, 50):
            e = normal_axis(theta).as_array()
            assert abs(float(direction(theta) @ e)) < 1e-15
            assert abs(float(direction_deriv(theta) @ e)) < 1e-15


class TestPlaneProjNorm:
    def test_vertical_point(self):
        z = Point3(0.0, 0.0, 1.0)
        for theta in (0.0, 0.7, 3.0):
            assert plane_proj_norm(theta, z) == pytest.approx(1 / SQRT2)

    def test_vanishes_on_kernel_line(self):
        rng = np.random.default_rng(4)
        for theta in rng.uniform(0, TWO_PI, 100):
            e = normal_axis(theta)
            s = rng.uniform(-3, 3)
            z = Point3(e.x1 * s, e.x2 * s, e.r * s)
            assert plane_proj_norm(theta, z) < 1e-12

    def test_sandwich_against_component_sum(self):
        rng = np.random.default_rng(5)
        for _ in range(10_000):
            theta = rng.uniform(0, TWO_PI)
            z = rand_point(rng)
            norm = plane_proj_norm(theta, z)
            comp_sum = abs(project(theta, z)) + abs(
                (-z.x1 * math.sin(theta) + z.x2 * math.cos(theta)) / SQRT2
            )
            assert norm <= comp_sum + 1e-12
            assert comp_sum <= 2 * norm + 1e-12


class TestTangencyDefect:
    def test_examples(self):
        assert tangency_defect(Point3(1, 0, 1)) == 0.0
        assert tangency_defect(Point3(3, 4, 2)) == pytest.approx(3.0)
        assert tangency_defect(Point3(0, 0, 1)) == pytest.approx(1.0)


class TestTangencyParameter:
    def test_on_cone_vanishes(self):
        assert tangency_parameter(Point3(1, 0, -1)) == pytest.approx(0.0, abs=1e-15)

    def test_vertical(self):
        assert tangency_parameter(Point3(0, 0, 1)) == pytest.approx(1 / SQRT2)

    def test_derived_value(self):
        assert tangency_parameter(Point3(3, 4, 2)) == pytest.approx(3 / SQRT2, abs=1e-8)

    def test_full_circle_identity_and_two_sided(self):
        rng = np.random.default_rng(6)
        for _ in range(10_000):
            z = rand_point(rng)
            d = tangency_parameter(z)
            dp = tangency_defect(z)
            assert d * SQRT2 == pytest.approx(dp, rel=1e-9, abs=1e-14)
            assert d <= dp + 1e-12
            assert dp <= 2 * d + 1e-12

    def test_bounded_by_norm_and_monotone_in_window(self):
        rng = np.random.default_rng(7)
        for _ in range(2000):
            z = rand_point(rng)
            lo = rng.uniform(0, 3.0)
            length = rng.uniform(0.05, 1.2)
            j = ThetaInterval(lo, lo + length)
            big = ThetaInterval(max(0.0, lo - 0.3), min(TWO_PI, lo + length + 0.3))
            assert tangency_parameter(z, j) <= z.norm() + 1e-12
            assert tangency_parameter(z, big) <= tangency_parameter(z, j) + 1e-12

    def test_degenerate_origin(self):
        assert tangency_parameter(Point3(0, 0, 0)) == 0.0

    def test_grid_minimization_oracle(self):
        # the analytic minimum matches a dense grid scan of plane_proj_norm
        # within the grid's Lipschitz error (slope of the plane component
        # along theta is at most sqrt(2)|z|)
        rng = np.random.default_rng(8)
        grid_n = 1_000_000
        for _ in range(1000):
            z = rand_point(rng)
            lo = rng.uniform(0, 3.0)
            j = ThetaInterval(lo, lo + rng.uniform(0.1, math.pi))
            thetas = np.linspace(j.lo, j.hi, grid_n)
            a = (z.x1 * np.cos(thetas) + z.x2 * np.sin(thetas) + z.r) / SQRT2
            b = (-z.x1 * np.sin(thetas) + z.x2 * np.cos(thetas)) / SQRT2
            grid_min = float(np.min(np.hypot(a, b)))
            exact = tangency_parameter(z, j)
            step = j.length / (grid_n - 1)
            lipschitz = SQRT2 * z.norm() * step / 2
            assert exact <= grid_min + 1e-12
            assert grid_min - exact <= lipschitz + 1e-12


class TestSublevelSet:
    def test_vertical_point_empty(self):
        es = sublevel_set(Point3(0, 0, 1), 0.1, ThetaInterval(0.5, 2.0))
        assert es.is_empty()

    def test_single_interval_halfwidth(self):
        # window whose half covers [pi/2 - 0.7, pi/2 + 0.7]
        j = ThetaInterval(math.pi / 2 - 1.4, math.pi / 2 + 1.4)
        es = sublevel_set(Point3(1, 0, 0), 0.1, j)
        assert len(es) == 1
        lo, hi = es.intervals[0]
        hw = math.asin(SQRT2 * 0.1)
        assert 0.5 * (lo + hi) == pytest.approx(math.pi / 2, abs=1e-12)
        assert 0.5 * (hi - lo) == pytest.approx(hw, abs=1e-12)

    def test_full_circle_two_arcs(self):
        es = sublevel_set(Point3(1, 0, 0), 0.1, FULL_CIRCLE)
        assert len(es) == 2

    def test_second_order_zero_sqrt_scaling(self):
        # on-cone point: single sublevel arc of half-width ~ sqrt(2*sqrt(2)*delta)
        z = Point3(-1.0, 0.0, -1.0)
        for delta in (1e-4, 1e-5, 1e-6):
            es = sublevel_set(z, delta, FULL_CIRCLE)
            assert len(es) == 1
            measured = es.total_length() / 2
            predicted = math.sqrt(2 * SQRT2 * delta)
            assert measured == pytest.approx(predicted, rel=0.05)

    def test_numeric_root_oracle(self):
        # closed-form boundaries solve |project| = delta, checked by bisection
        rng = np.random.default_rng(9)
        checked = 0
        while checked < 200:
            z = rand_point(rng)
            delta = 10.0 ** rng.uniform(-4, -1)
            length = rng.uniform(0.5, math.pi)
            lo = rng.uniform(0, TWO_PI - length)
            j = ThetaInterval(lo, lo + length)
            es = sublevel_set(z, delta, j)
            if es.is_empty():
                continue
            half = j.half()
            f = lambda t: abs(project(t, z)) - delta
            for a, b in es:
                for endpoint in (a, b):
                    if abs(endpoint - half.lo) < 1e-12 or abs(endpoint - half.hi) < 1e-12:
                        continue  # clipped by the window, not a root
                    assert abs(f(endpoint)) < 1e-9
            checked += 1

    def test_degenerate_origin_returns_window(self):
        j = ThetaInterval(0.5, 2.0)
        es = sublevel_set(Point3(0, 0, 0), 0.01, j)
        assert es.intervals == ((j.half().lo, j.half().hi),)

    def test_at_most_two_components_random(self):
        rng = np.random.default_rng(10)
        for _ in range(5000):
            z = rand_point(rng)
            delta = 10.0 ** rng.uniform(-5, -0.5)
            lo = rng.uniform(0, 3.0)
            j = ThetaInterval(lo, lo + rng.uniform(0.1, math.pi))
            assert len(sublevel_set(z, delta, j)) <= 2

    def test_rejects_bad_delta(self):
        with pytest.raises(ValueError):
            sublevel_set(Point3(1, 0, 0), 0.0, FULL_CIRCLE)


class TestZeroCount:
    def test_examples(self):
        assert projection_zero_count(Point3(1, 0, -0.5), FULL_CIRCLE) == 2
        assert projection_zero_count(Point3(0, 0, 1), FULL_CIRCLE) == 0
        assert projection_zero_count(Point3(1, 0, -1), FULL_CIRCLE) == 1

    def test_degenerate_errors(self):
        with pytest.raises(ValueError):
            projection_zero_count(Point3(0, 0, 0), FULL_CIRCLE)

    def test_at_most_two_on_subperiod_windows(self):
        rng = np.random.default_rng(11)
        for _ in range(5000):
            z = rand_point(rng)
            if z.planar_norm() == 0:
                continue
            lo = rng.uniform(0, 1.0)
            hi = min(TWO_PI, lo + rng.uniform(0.1, TWO_PI - 1e-9))
            j = ThetaInterval(lo, hi, wide=True)
            assert projection_zero_count(z, j) <= 2

    def test_counts_match_dense_sign_changes(self):
        rng = np.random.default_rng(12)
        for _ in range(300):
            z = rand_point(rng)
            if z.planar_norm() < 1e-9:
                continue
            count = projection_zero_count(z, FULL_CIRCLE)
            thetas = np.linspace(0, TWO_PI, 200001, endpoint=False)
            vals = (z.x1 * np.cos(thetas) + z.x2 * np.sin(thetas) + z.r) / SQRT2
            crossings = int(np.count_nonzero(np.diff(np.sign(vals)) != 0))
            # tangential roots need not register as sign changes
            assert count >= crossings / 2 - 1e-9
            assert count <= 2


class TestSineWave:
    def test_amplitude_phase_matches_projection(self):
        rng = np.random.default_rng(13)
        thetas = np.linspace(0, TWO_PI, 257)
        for _ in range(200):
            z = rand_point(rng)
            wave = SineWave(z)
            exact = np.array([project(t, z) for t in thetas])
            assert np.max(np.abs(wave.values(thetas) - exact)) < 1e-12

    def test_neighborhood_membership(self):
        z = Point3(0.3, -0.2, 1.1)
        theta = 0.8
        assert in_wave_neighborhood(z, 1e-12, (theta, project(theta, z)))
        v = Point3(0, 0, 1)
        assert not in_wave_neighborhood(v, 0.5, (theta, 0.0))
        assert in_wave_neighborhood(v, 0.8, (theta, 0.0))


class TestMinProjectionAngle:
    def test_is_global_minimizer(self):
        rng = np.random.default_rng(14)
        for _ in range(500):
            z = rand_point(rng)
            if z.planar_norm() < 1e-12:
                continue
            theta0 = min_projection_angle(z)
            assert plane_proj_norm(theta0, z) == pytest.approx(
                tangency_parameter(z), abs=1e-10
            )
