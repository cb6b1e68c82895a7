import math

import numpy as np
import pytest
from shapely.geometry import LineString, Point as ShapelyPoint

from geodesic_kernel.cover import ApexedTriangle, build_cover, envelope
from geodesic_kernel.errors import UncoveredChord
from geodesic_kernel.geometry import Point
from geodesic_kernel.oracles import brute_force_center
from geodesic_kernel.search import Verdict, min_on_chord, restrict_to_chord, side_of_center
from geodesic_kernel.search.regions import (
    clip_segment,
    line_piece_through,
    local_side,
    polygon_region,
    split_region,
)


@pytest.fixture
def square_cover(square):
    return build_cover(square)


def _covered_union(fns):
    reach = 0.0
    for fn in sorted(fns, key=lambda f: f.t0):
        if fn.t0 > reach + 1e-9:
            return False
        reach = max(reach, fn.t1)
    return reach >= 1.0 - 1e-9


class TestRestriction:
    def test_square_vertical_chord(self, square_cover):
        fns = restrict_to_chord(square_cover.arrays, ((0.5, 0.0), (0.5, 1.0)))
        assert fns
        assert _covered_union(fns)
        assert all(0.0 <= f.t0 < f.t1 <= 1.0 for f in fns)

    def test_triangle_missing_chord(self):
        t = ApexedTriangle(Point(2, 2), Point(3, 2), Point(2, 3), definer=0, kappa=0.0)
        assert restrict_to_chord([t], ((0.0, 0.0), (1.0, 0.0))) == []

    def test_triangle_containing_chord(self):
        t = ApexedTriangle(Point(0, 0), Point(4, 0), Point(0, 4), definer=0, kappa=0.5)
        (fn,) = restrict_to_chord([t], ((0.5, 0.5), (1.5, 0.5)), ids=[9])
        assert fn.triangle_id == 9
        assert (fn.t0, fn.t1) == (0.0, 1.0)
        assert fn.value_at((1.0, 0.0)) == pytest.approx(1.5)

    def test_partial_interval(self):
        t = ApexedTriangle(Point(0, 0), Point(1, 0), Point(0, 1), definer=0, kappa=0.0)
        (fn,) = restrict_to_chord([t], ((0.0, 0.5), (2.0, 0.5)))
        assert fn.t0 == pytest.approx(0.0)
        assert fn.t1 == pytest.approx(0.25)


class TestMinOnChord:
    def test_vertical_midline(self, square_cover):
        chord = ((0.5, 0.0), (0.5, 1.0))
        t, value, active = min_on_chord(restrict_to_chord(square_cover.arrays, chord), chord)
        assert t == pytest.approx(0.5, abs=1e-9)
        assert value == pytest.approx(math.sqrt(2.0) / 2.0)
        assert active

    def test_horizontal_quarter(self, square_cover):
        chord = ((0.0, 0.25), (1.0, 0.25))
        t, value, _ = min_on_chord(restrict_to_chord(square_cover.arrays, chord), chord)
        assert t == pytest.approx(0.5, abs=1e-9)
        assert value == pytest.approx(0.901388, abs=1e-6)

    def test_matches_dense_scan(self, random_polygon):
        P = random_polygon
        cover = build_cover(P)
        region = polygon_region(P)
        rng = np.random.default_rng(5)
        minx, miny, maxx, maxy = P.bbox()
        checked = 0
        while checked < 5:
            x = (float(rng.uniform(minx, maxx)), float(rng.uniform(miny, maxy)))
            if not region.contains(ShapelyPoint(x)):
                continue
            ang = float(rng.uniform(0.0, math.pi))
            seg = line_piece_through(region, x, (math.cos(ang), math.sin(ang)), 1e-9)
            if seg is None:
                continue
            _, value, _ = min_on_chord(restrict_to_chord(cover.arrays, seg), seg)
            ts = np.linspace(0.0, 1.0, 2001)[1:-1]
            scan = min(
                envelope(cover.arrays, (seg[0][0] + s * (seg[1][0] - seg[0][0]),
                                        seg[0][1] + s * (seg[1][1] - seg[0][1])), scale=P.scale())[0]
                for s in ts
            )
            assert value <= scan + 1e-9
            assert value >= scan - 1e-3 * P.scale()
            checked += 1

    def test_uncovered(self):
        t = ApexedTriangle(Point(0, 0), Point(1, 0), Point(0, 1), definer=0, kappa=0.0)
        chord = ((0.0, 0.5), (2.0, 0.5))
        with pytest.raises(UncoveredChord):
            min_on_chord(restrict_to_chord([t], chord), chord)


class TestSideOfCenter:
    def test_right_of_quarter_line(self, square_cover):
        decision = side_of_center(square_cover.arrays, ((0.25, 0.0), (0.25, 1.0)))
        assert decision.verdict is Verdict.RIGHT

    def test_reversed_chord_flips(self, square_cover):
        decision = side_of_center(square_cover.arrays, ((0.25, 1.0), (0.25, 0.0)))
        assert decision.verdict is Verdict.LEFT

    def test_on_midline(self, square_cover):
        decision = side_of_center(square_cover.arrays, ((0.5, 0.0), (0.5, 1.0)))
        assert decision.verdict is Verdict.ON
        assert decision.point[1] == pytest.approx(0.5, abs=1e-6)
        assert decision.value == pytest.approx(math.sqrt(2.0) / 2.0)

    def test_with_region(self, square, square_cover):
        region = polygon_region(square)
        decision = side_of_center(square_cover.arrays, ((0.0, 0.8), (1.0, 0.8)), region=region)
        # 向右的弦，中心在下方即右侧
        assert decision.verdict is Verdict.RIGHT

    def test_reflex_endpoint_not_center(self, comb):
        # 弦上最小点落在反射顶点 (4, 1)，但向左仍可下降
        cover = build_cover(comb)
        region = polygon_region(comb)
        decision = side_of_center(cover.arrays, ((4.0, 0.0), (4.0, 1.0)), region=region)
        assert decision.verdict is Verdict.LEFT
        assert decision.point[1] == pytest.approx(1.0, abs=1e-6)
        assert decision.gradient_norm > 0.5

    def test_reflex_endpoint_is_center(self, l_shape):
        cover = build_cover(l_shape)
        region = polygon_region(l_shape)
        decision = side_of_center(cover.arrays, ((1.0, 0.0), (1.0, 1.0)), region=region)
        assert decision.verdict is Verdict.ON
        assert decision.value == pytest.approx(math.sqrt(2.0), abs=1e-9)

    def test_agrees_with_brute_force(self, random_polygon):
        P = random_polygon
        cover = build_cover(P)
        center = brute_force_center(P, grid=48).point
        region = polygon_region(P)
        rng = np.random.default_rng(17)
        minx, miny, maxx, maxy = P.bbox()
        checked = 0
        while checked < 8:
            x = (float(rng.uniform(minx, maxx)), float(rng.uniform(miny, maxy)))
            if not region.contains(ShapelyPoint(x)):
                continue
            ang = float(rng.uniform(0.0, math.pi))
            seg = line_piece_through(region, x, (math.cos(ang), math.sin(ang)), 1e-9)
            if seg is None:
                continue
            target = ShapelyPoint(center)
            if target.distance(LineString(seg)) < 1e-3 * P.scale():
                continue
            left, right = split_region(region, seg)
            expected = Verdict.LEFT if left.distance(target) <= right.distance(target) else Verdict.RIGHT
            decision = side_of_center(cover.arrays, seg, region=region)
            assert decision.verdict is expected
            checked += 1


class TestRegions:
    def test_clip_segment(self, l_shape):
        region = polygon_region(l_shape)
        seg = clip_segment(region, (-1.0, 0.5), (3.0, 0.5), 1e-12)
        assert seg[0] == pytest.approx((0.0, 0.5))
        assert seg[1] == pytest.approx((2.0, 0.5))

    def test_line_piece_picks_nearest(self, comb):
        region = polygon_region(comb)
        seg = line_piece_through(region, (2.5, 2.0), (1.0, 0.0), 1e-12)
        assert seg[0] == pytest.approx((2.0, 2.0))
        assert seg[1] == pytest.approx((3.0, 2.0))

    def test_split_and_local_side(self, square):
        region = polygon_region(square)
        seg = (Point(0.5, 0.0), Point(0.5, 1.0))
        left, right = split_region(region, seg)
        assert left.area == pytest.approx(0.5)
        assert left.centroid.x < 0.5 < right.centroid.x
        assert local_side(left, seg) is Verdict.LEFT
        assert local_side(right, seg) is Verdict.RIGHT
        assert local_side(right, (Point(0.0, 0.0), Point(0.0, 1.0))) is None

    def test_split_only_along_segment(self, comb):
        region = polygon_region(comb)
        seg = (Point(0.0, 2.0), Point(1.0, 2.0))
        left, right = split_region(region, seg)
        # 只切开左齿，另外两个齿不受影响
        assert left.area == pytest.approx(1.0)
        assert right.area == pytest.approx(10.0)
        assert local_side(left, seg) is Verdict.LEFT
