import math

import numpy as np
import pytest

from geodesic_kernel.errors import PointOutside
from geodesic_kernel.geometry import contains, random_simple_polygon
from geodesic_kernel.oracles import (
    brute_force_center,
    farthest_value,
    minimum_enclosing_circle,
    vertex_distance_matrix,
    visibility_distances,
    visibility_matrix,
)


class TestEnclosingCircle:
    def test_single_point(self):
        c = minimum_enclosing_circle([(1.0, 2.0)])
        assert tuple(c.center) == (1.0, 2.0)
        assert c.radius == 0.0

    def test_two_points(self):
        c = minimum_enclosing_circle([(0.0, 0.0), (2.0, 0.0)])
        assert tuple(c.center) == pytest.approx((1.0, 0.0))
        assert c.radius == pytest.approx(1.0)

    def test_obtuse_triangle_uses_long_side(self):
        c = minimum_enclosing_circle([(0.0, 0.0), (4.0, 0.0), (2.0, 0.5)])
        assert tuple(c.center) == pytest.approx((2.0, 0.0))
        assert c.radius == pytest.approx(2.0)

    def test_contains_random_points(self):
        pts = np.random.default_rng(4).normal(size=(200, 2))
        c = minimum_enclosing_circle(pts, seed=4)
        assert all(c.contains(p) for p in pts)
        again = minimum_enclosing_circle(pts, seed=9)
        assert again.radius == pytest.approx(c.radius)

    def test_empty(self):
        with pytest.raises(ValueError):
            minimum_enclosing_circle([])


class TestDistances:
    def test_l_shape_visibility(self, l_shape):
        vis = visibility_matrix(l_shape)
        assert vis[0, 3] and not vis[2, 4]
        assert (vis == vis.T).all()

    def test_l_shape_matrix(self, l_shape):
        D = vertex_distance_matrix(l_shape)
        assert D[1, 5] == pytest.approx(2.0 * math.sqrt(2.0))
        assert D[2, 4] == pytest.approx(2.0)

    def test_from_point(self, l_shape):
        dist = visibility_distances(l_shape, (1.8, 0.4))
        assert dist[5] == pytest.approx(math.dist((1.8, 0.4), (1.0, 1.0)) + math.sqrt(2.0))
        assert dist[0] == pytest.approx(math.dist((1.8, 0.4), (0.0, 0.0)))

    def test_point_outside(self, l_shape):
        with pytest.raises(PointOutside):
            visibility_distances(l_shape, (1.5, 1.5))

    def test_farthest_value_square(self, square):
        assert farthest_value(square, (0.5, 0.5)) == pytest.approx(math.sqrt(2.0) / 2.0)
        assert farthest_value(square, (0.0, 0.0)) == pytest.approx(math.sqrt(2.0))

    def test_farthest_value_blocked_vertex(self, l_shape):
        # (1, 2) 被反射顶点 (1, 1) 挡住，只能绕过去
        assert farthest_value(l_shape, (1.8, 0.4)) == pytest.approx(max(visibility_distances(l_shape, (1.8, 0.4))))
        assert farthest_value(l_shape, (1.0, 1.0)) == pytest.approx(math.sqrt(2.0))

    @pytest.mark.parametrize("n,seed", [(8, 3), (12, 0), (16, 5)])
    def test_farthest_value_matches_dijkstra(self, n, seed):
        P = random_simple_polygon(n, seed)
        D = vertex_distance_matrix(P)
        rng = np.random.default_rng(seed)
        minx, miny, maxx, maxy = P.bbox()
        checked = 0
        while checked < 30:
            x = (float(rng.uniform(minx, maxx)), float(rng.uniform(miny, maxy)))
            if not contains(P, x):
                continue
            expected = float(np.max(visibility_distances(P, x)))
            assert farthest_value(P, x, D) == pytest.approx(expected, abs=1e-9 * P.scale())
            checked += 1


class TestBruteForce:
    def test_square(self, square):
        result = brute_force_center(square, grid=32)
        assert result.point == pytest.approx((0.5, 0.5), abs=1e-6)
        assert result.radius == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-9)

    def test_refinement_improves_grid(self, l_shape):
        D = vertex_distance_matrix(l_shape)
        result = brute_force_center(l_shape, grid=16, D=D)
        assert result.radius <= farthest_value(l_shape, result.grid_point, D) + 1e-12
