import math

import numpy as np
import pytest

from geodesic_kernel.errors import OrderViolation, PointOutside, RootOutside
from geodesic_kernel.oracles import visibility_distances
from geodesic_kernel.paths import (
    EulerLCA,
    build_spt,
    foreign_edges,
    geodesic_distance,
    geodesic_path,
    is_taut,
    path_between,
)


class TestLCA:
    def test_small_tree(self):
        lca = EulerLCA([-1, 0, 0, 1, 1], [0, 1, 1, 2, 2], 0)
        assert lca.lca(3, 4) == 1
        assert lca.lca(3, 2) == 0
        assert lca.lca(4, 4) == 4
        assert lca.lca(1, 3) == 1


class TestShortestPathTree:
    def test_square_from_corner(self, square):
        T = build_spt(square, square[0])
        assert T.root_id == 0
        assert list(T.parent[:4]) == [-1, 0, 0, 0]
        np.testing.assert_allclose(T.dist[:4], [0.0, 1.0, math.sqrt(2.0), 1.0])

    def test_l_shape_bends_at_reflex_vertex(self, l_shape):
        T = build_spt(l_shape, l_shape[1])
        # (2,0) 看不到 (1,2)，路径绕过 (1,1)
        assert T.parent[4] == 3
        assert T.parent[5] == 3
        assert T.dist[4] == pytest.approx(1.0 + math.sqrt(2.0))
        assert T.dist[5] == pytest.approx(math.sqrt(2.0) + math.sqrt(2.0))

    def test_root_outside(self, l_shape):
        with pytest.raises(RootOutside):
            build_spt(l_shape, (1.5, 1.5))

    def test_matches_visibility_dijkstra(self, random_polygon):
        P = random_polygon
        T = build_spt(P, P[0])
        np.testing.assert_allclose(T.dist[:P.n], visibility_distances(P, P[0]), atol=1e-9)


class TestGeodesicPath:
    def test_straight(self, l_shape):
        path = geodesic_path(l_shape, (0.5, 1.5), (1.5, 0.5))
        assert len(path.points) == 2
        assert path.length == pytest.approx(math.sqrt(2.0))

    def test_bend(self, l_shape):
        path = geodesic_path(l_shape, (0.5, 1.8), (1.8, 0.5))
        assert (1.0, 1.0) in path.points
        assert path.length == pytest.approx(2.0 * math.sqrt(0.89))

    def test_comb_goes_under_teeth(self, comb):
        assert geodesic_distance(comb, (0.5, 2.5), (4.5, 2.5)) == pytest.approx(3.0 + 2.0 * math.sqrt(2.5))

    def test_symmetric(self, comb):
        a, b = (0.5, 2.5), (2.5, 2.0)
        assert geodesic_distance(comb, a, b) == pytest.approx(geodesic_distance(comb, b, a))

    def test_point_outside(self, l_shape):
        with pytest.raises(PointOutside):
            geodesic_path(l_shape, (0.5, 0.5), (1.5, 1.5))

    def test_tautness(self, l_shape):
        assert is_taut(l_shape, (0.5, 1.8), (1.0, 1.0), (1.8, 0.5))
        assert not is_taut(l_shape, (0.5, 1.5), (1.0, 1.0), (0.5, 0.5))


class TestPathBetween:
    def test_matches_direct_path(self, random_polygon):
        P = random_polygon
        x, y = 0, P.n // 2
        T_x, T_y = build_spt(P, P[x]), build_spt(P, P[y])
        for u in range(1, y):
            for v in range(y + 1, P.n):
                path = path_between(u, v, T_x, T_y)
                assert path.length == pytest.approx(visibility_distances(P, P[u])[v], abs=1e-9)
                assert foreign_edges(list(path.nodes), T_x, T_y) <= 1

    def test_order_violation(self, random_polygon):
        P = random_polygon
        T_x, T_y = build_spt(P, P[0]), build_spt(P, P[P.n // 2])
        with pytest.raises(OrderViolation):
            path_between(1, 2, T_x, T_y)
