import numpy as np
import pytest

from geodesic_kernel.cover import NEG_INF, ApexedTriangle
from geodesic_kernel.errors import IdenticalConstraints
from geodesic_kernel.geometry import Point
from geodesic_kernel.search import (
    Constraint,
    constraint_value,
    feasible,
    min_norm_in_hull,
    separating_plane,
)


class TestMinNormInHull:
    def test_opposite_vectors(self):
        z, contains = min_norm_in_hull([(1.0, 0.0), (-1.0, 0.0)])
        np.testing.assert_allclose(z, [0.0, 0.0], atol=1e-12)
        assert contains

    def test_single_vector(self):
        z, contains = min_norm_in_hull([(1.0, 0.0)])
        np.testing.assert_allclose(z, [1.0, 0.0])
        assert not contains

    def test_segment_closest_point(self):
        z, contains = min_norm_in_hull([(1.0, 0.0), (0.0, 1.0)])
        np.testing.assert_allclose(z, [0.5, 0.5])
        assert not contains

    def test_triangle_around_origin(self):
        _, contains = min_norm_in_hull([(1.0, 0.0), (-0.5, 0.8), (-0.5, -0.8)])
        assert contains


class TestConstraintValue:
    def test_on_circle(self):
        c = Constraint(Point(0.0, 0.0), 0.0)
        assert constraint_value(c, (3.0, 4.0), 5.0) == pytest.approx(0.0)

    def test_with_kappa(self):
        c = Constraint(Point(0.0, 0.0), 1.0)
        assert constraint_value(c, (0.0, 0.0), 2.0) == pytest.approx(-1.0)

    def test_outside_domain(self):
        t = ApexedTriangle(Point(0, 0), Point(1, 0), Point(0, 1), definer=0, kappa=0.0)
        c = Constraint.from_triangle(t, 7)
        assert c.triangle_id == 7
        assert constraint_value(c, (2.0, 2.0), 1.0) == NEG_INF


class TestSeparatingPlane:
    def test_bisector(self):
        plane = separating_plane(Constraint(Point(0, 0), 0.0), Constraint(Point(1, 0), 0.0))
        assert (plane.alpha, plane.beta1, plane.beta2, plane.delta) == (0.0, 2.0, 0.0, -1.0)
        assert plane.side((0.5, 7.0), 3.0) == 0

    def test_same_apex(self):
        plane = separating_plane(Constraint(Point(0, 0), 1.0), Constraint(Point(0, 0), 0.0))
        assert (plane.alpha, plane.beta1, plane.beta2, plane.delta) == (2.0, 0.0, 0.0, -1.0)

    def test_identical(self):
        c = Constraint(Point(0.3, 0.4), 0.5)
        with pytest.raises(IdenticalConstraints):
            separating_plane(c, Constraint(Point(0.3, 0.4), 0.5))

    def test_random_pairs(self):
        rng = np.random.default_rng(11)
        for _ in range(1000):
            ci = Constraint(Point(*rng.uniform(-1, 1, 2)), float(rng.uniform(0, 1)))
            cj = Constraint(Point(*rng.uniform(-1, 1, 2)), float(rng.uniform(0, 1)))
            plane = separating_plane(ci, cj)
            x = rng.uniform(-1, 1, 2)
            r = float(rng.uniform(1, 3))
            diff = constraint_value(ci, x, r) - constraint_value(cj, x, r)
            assert diff == pytest.approx(plane.evaluate(x, r), abs=1e-9)
            # 沿 r 方向投到平面上，两约束相等
            if abs(plane.alpha) > 1e-3:
                r_on = -(plane.beta1 * x[0] + plane.beta2 * x[1] + plane.delta) / plane.alpha
                gap = constraint_value(ci, x, r_on) - constraint_value(cj, x, r_on)
                assert abs(gap) <= 1e-9 * max(1.0, r_on * r_on)


class TestFeasible:
    def test_square_center(self):
        corners = [Point(0, 0), Point(1, 0), Point(1, 1), Point(0, 1)]
        cs = [Constraint(a, 0.0) for a in corners]
        r = np.sqrt(0.5)
        assert feasible(cs, (0.5, 0.5), r)
        assert not feasible(cs, (0.5, 0.5), 0.7)
        assert not feasible(cs, (0.6, 0.5), r)

    def test_radius_must_exceed_kappa(self):
        assert not feasible([Constraint(Point(0, 0), 2.0)], (0.0, 0.0), 1.0)
