import math

import numpy as np
import pytest

from geodesic_kernel import build_cover, geodesic_center, geodesic_diameter
from geodesic_kernel.config import SearchSettings
from geodesic_kernel.errors import CertificateFailure
from geodesic_kernel.geometry import contains, random_convex_polygon, random_simple_polygon
from geodesic_kernel.oracles import (
    brute_force_center,
    farthest_value,
    minimum_enclosing_circle,
    visibility_distances,
)
from geodesic_kernel.search import CERTIFICATE_LIMIT, optimality_certificate


class TestKnownCenters:
    def test_square(self, square):
        result = geodesic_center(square)
        assert result.point == pytest.approx((0.5, 0.5), abs=1e-9)
        assert result.radius == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-9)
        assert result.to_dict() == {"center": [result.point[0], result.point[1]], "radius": result.radius}

    def test_rectangle(self, rectangle):
        result = geodesic_center(rectangle)
        assert result.point == pytest.approx((2.0, 1.0), abs=1e-9)
        assert result.radius == pytest.approx(math.sqrt(5.0), abs=1e-9)

    def test_equilateral_triangle(self, triangle):
        result = geodesic_center(triangle)
        assert result.point == pytest.approx((0.5, 0.5 / math.sqrt(3.0)), abs=1e-9)
        assert result.radius == pytest.approx(1.0 / math.sqrt(3.0), abs=1e-9)

    def test_hexagon(self, hexagon):
        result = geodesic_center(hexagon)
        assert result.point == pytest.approx((0.0, 0.0), abs=1e-9)
        assert result.radius == pytest.approx(1.0, abs=1e-9)

    def test_certificate(self, square):
        result = geodesic_center(square)
        assert result.certificate <= 1e-6
        assert optimality_certificate(result.cover.arrays, result.point) <= 1e-6

    def test_l_shape_reflex_center(self, l_shape):
        result = geodesic_center(l_shape)
        assert result.point == pytest.approx((1.0, 1.0), abs=1e-7)
        assert result.radius == pytest.approx(math.sqrt(2.0), abs=1e-7)
        assert optimality_certificate(result.cover.arrays, (1.0, 1.0), scale=l_shape.scale()) <= 1e-6

    def test_certificate_at_reflex_vertex(self, comb):
        # (4, 1) 沿边界向左仍能下降
        cover = build_cover(comb)
        assert optimality_certificate(cover.arrays, (4.0, 1.0), scale=comb.scale()) > 0.5

    def test_bad_certificate_raises(self, square, monkeypatch):
        monkeypatch.setattr(
            "geodesic_kernel.search.center.optimality_certificate", lambda *args, **kwargs: 10.0 * CERTIFICATE_LIMIT
        )
        with pytest.raises(CertificateFailure):
            geodesic_center(square)


def _check_convex(n, seed):
    P = random_convex_polygon(n, seed)
    result = geodesic_center(P, seed=seed)
    circle = minimum_enclosing_circle(P.vertices, seed=seed)
    assert result.point == pytest.approx(tuple(circle.center), abs=1e-6)
    assert result.radius == pytest.approx(circle.radius, abs=1e-6)


class TestConvexMatchesEnclosingCircle:
    @pytest.mark.parametrize("seed", range(5))
    def test_small(self, seed):
        _check_convex(6 + seed, seed)

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(100))
    def test_sweep(self, seed):
        _check_convex(5 + seed % 20, 1000 + seed)


def _radius_by_visibility(P, x):
    """可见图 Dijkstra 得到的 F_P(x)，不经过覆盖也不经过网格预言机"""
    return float(np.max(visibility_distances(P, x)))


def _check_simple(P, seed, grid=64):
    result = geodesic_center(P, seed=seed)
    oracle = brute_force_center(P, grid=grid)
    assert contains(P, result.point)
    assert result.certificate <= CERTIFICATE_LIMIT
    assert result.radius <= oracle.radius + 1e-9
    assert _radius_by_visibility(P, result.point) == pytest.approx(result.radius, abs=1e-9 * P.scale())
    assert farthest_value(P, result.point) == pytest.approx(result.radius, abs=1e-9 * P.scale())
    return result, oracle


class TestSimpleMatchesBruteForce:
    def test_random(self, random_polygon):
        result, oracle = _check_simple(random_polygon, seed=0)
        assert result.radius == pytest.approx(oracle.radius, abs=1e-5 * random_polygon.scale())

    def test_comb(self, comb):
        _check_simple(comb, seed=0)

    def test_l_shape(self, l_shape):
        _check_simple(l_shape, seed=0)

    @pytest.mark.parametrize(
        "n,seed",
        [(8, 1), (8, 3), (8, 5), (12, 0), (16, 5), (24, 0), (24, 2), (24, 3), (32, 5), (32, 7), (48, 0), (48, 3)],
    )
    def test_larger_polygons(self, n, seed):
        _check_simple(random_simple_polygon(n, seed), seed, grid=32)

    @pytest.mark.parametrize(
        "n,seed,radius,tol",
        [(8, 5, 0.546685, 2e-6), (24, 0, 1.029993, 2e-6), (8, 1, 0.553058, 1e-5)],
    )
    def test_known_radii(self, n, seed, radius, tol):
        P = random_simple_polygon(n, seed)
        result = geodesic_center(P, seed=seed)
        assert result.radius == pytest.approx(radius, abs=tol)
        assert result.certificate <= CERTIFICATE_LIMIT
        pruned = geodesic_center(P, settings=SearchSettings(base_case=8), seed=seed)
        assert pruned.trace.iterations
        assert pruned.radius == pytest.approx(radius, abs=tol)

    def test_not_stuck_on_reflex_vertex(self):
        P = random_simple_polygon(8, 5)
        result = geodesic_center(P)
        assert min(math.dist(result.point, v) for v in P.vertices) > 1e-3

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(20))
    def test_sweep(self, seed):
        _check_simple(random_simple_polygon(10 + seed, seed), seed)


class TestSearchOptions:
    def test_reuses_given_cover(self, random_polygon):
        cover = build_cover(random_polygon)
        result = geodesic_center(random_polygon, cover=cover)
        assert result.cover is cover

    def test_small_base_case_same_center(self, random_polygon):
        a = geodesic_center(random_polygon)
        b = geodesic_center(random_polygon, settings=SearchSettings(base_case=8), seed=7)
        assert b.radius == pytest.approx(a.radius, abs=1e-6 * random_polygon.scale())

    def test_audit(self, random_polygon):
        result = geodesic_center(random_polygon, settings=SearchSettings(base_case=8), audit=True)
        assert result.trace.audit_failures == 0

    def test_audit_from_environment(self, square, monkeypatch):
        monkeypatch.setenv("GEODESIC_CHECK", "1")
        result = geodesic_center(square)
        assert result.trace.audit_failures == 0


class TestDiameter:
    def test_l_shape(self, l_shape):
        d = geodesic_diameter(l_shape)
        assert (d.u, d.v) == (1, 5)
        assert d.length == pytest.approx(2.0 * math.sqrt(2.0))
        data = d.to_dict(l_shape)
        assert data["points"] == [[2.0, 0.0], [0.0, 2.0]]

    def test_square_tie_break(self, square):
        d = geodesic_diameter(square)
        assert (d.u, d.v) == (0, 2)
        assert d.length == pytest.approx(math.sqrt(2.0))

    def test_bounds_radius(self, random_polygon):
        d = geodesic_diameter(random_polygon)
        r = geodesic_center(random_polygon).radius
        assert d.length / 2.0 <= r + 1e-9
        assert r <= d.length + 1e-9
