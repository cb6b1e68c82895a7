import math

import pytest

from geodesic_kernel.config import SearchSettings
from geodesic_kernel.cover import build_cover
from geodesic_kernel.errors import InconsistentOracles, NoProgress
from geodesic_kernel.geometry import Point
from geodesic_kernel.search import (
    Center,
    geodesic_center,
    FinalRegion,
    SearchCell,
    TriangleIndex,
    candidate_chords,
    decompose_cell,
    epsilon_net_chords,
    locate_cell,
    prune_triangles,
    search,
    solve_in_region,
)
from geodesic_kernel.search import prune_search
from geodesic_kernel.search.cells import net_size
from geodesic_kernel.search.regions import polygon_region


def _fake_chords(count):
    return [(Point(float(k), 0.0), Point(float(k), 1.0)) for k in range(count)]


class TestEpsilonNet:
    def test_size_formula(self):
        assert net_size(10, 1.0 / 12.0) == 10
        assert net_size(10000, 1.0 / 12.0) == 439

    def test_small_population_kept(self):
        chords = _fake_chords(10)
        assert epsilon_net_chords(chords, 1.0 / 12.0, seed=3) == chords

    def test_sample_is_reproducible(self):
        chords = _fake_chords(10000)
        net = epsilon_net_chords(chords, 1.0 / 12.0, seed=3)
        assert len(net) == 439
        assert len(set(net)) == 439
        assert net == epsilon_net_chords(chords, 1.0 / 12.0, seed=3)
        assert net != epsilon_net_chords(chords, 1.0 / 12.0, seed=4)


@pytest.fixture
def square_setup(square):
    cover = build_cover(square)
    index = TriangleIndex(cover.triangles)
    R = SearchCell(polygon_region(square), list(range(len(index))))
    return square, index, R


class TestCells:
    def test_candidate_chords_cross_interior(self, square_setup):
        P, index, R = square_setup
        chords = candidate_chords(P, index, R.triangle_ids, R.region)
        assert chords
        for p, q in chords:
            mid = (0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1]))
            assert 0.0 < mid[0] < 1.0 and 0.0 < mid[1] < 1.0

    def test_single_cut(self, square_setup):
        _, _, R = square_setup
        cells, cuts = decompose_cell(R, [((0.0, 0.25), (1.0, 0.25))])
        assert len(cuts) == 1
        assert sorted(round(c.region.area, 9) for c in cells) == [0.25, 0.75]

    def test_crossing_cuts_tile(self, square_setup):
        _, _, R = square_setup
        cells, cuts = decompose_cell(R, [((0.0, 0.25), (1.0, 0.25)), ((0.3, 0.0), (0.3, 1.0))])
        assert len(cuts) == 2
        assert len(cells) == 4
        assert sum(c.region.area for c in cells) == pytest.approx(1.0)
        assert all(c.size == 4 for c in cells)

    def test_locate_keeps_center_side(self, square_setup):
        _, index, R = square_setup
        cells, cuts = decompose_cell(R, [((0.0, 0.25), (1.0, 0.25))])
        found = locate_cell(cells, cuts, index, R.triangle_ids, R.region)
        assert isinstance(found, SearchCell)
        assert found.region.area == pytest.approx(0.75)
        assert found.region.contains(polygon_region_point(0.5, 0.5))

    def test_locate_hits_center_on_cut(self, square_setup):
        _, index, R = square_setup
        cells, cuts = decompose_cell(R, [((0.5, 0.0), (0.5, 1.0))])
        found = locate_cell(cells, cuts, index, R.triangle_ids, R.region)
        assert isinstance(found, Center)
        assert found.point == pytest.approx((0.5, 0.5), abs=1e-6)
        assert found.radius == pytest.approx(math.sqrt(2.0) / 2.0)

    def test_prune_drops_far_triangles(self, square_setup):
        _, index, R = square_setup
        cells, _ = decompose_cell(R, [((0.0, 0.25), (1.0, 0.25))])
        top = max(cells, key=lambda c: c.region.area)
        kept = prune_triangles(index, R.triangle_ids, top)
        assert 0 < len(kept) <= len(R.triangle_ids)
        for i in set(R.triangle_ids) - set(kept):
            t = index.triangles[i]
            assert max(t.apex[1], t.b[1], t.c[1]) <= 0.25 + 1e-9


def polygon_region_point(x, y):
    from shapely.geometry import Point as ShapelyPoint

    return ShapelyPoint(x, y)


class TestSolver:
    def test_square(self, square):
        cover = build_cover(square)
        point, value = solve_in_region(square, polygon_region(square), cover.triangles)
        assert point == pytest.approx((0.5, 0.5), abs=1e-9)
        assert value == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-9)

    def test_accepts_search_cell(self, rectangle):
        cover = build_cover(rectangle)
        cell = SearchCell(polygon_region(rectangle), list(range(len(cover))))
        point, value = solve_in_region(rectangle, cell, cover.triangles)
        assert point == pytest.approx((2.0, 1.0), abs=1e-9)
        assert value == pytest.approx(math.sqrt(5.0), abs=1e-9)


class TestPruneSearch:
    def test_base_case_skips_iterations(self, square):
        outcome = search(square, build_cover(square))
        assert isinstance(outcome.result, FinalRegion)
        assert outcome.trace.iterations == []
        assert outcome.trace.halving_rate() == 1.0

    def test_iterations_shrink(self, random_polygon):
        cover = build_cover(random_polygon)
        settings = SearchSettings(base_case=8)
        outcome = search(random_polygon, cover, settings=settings, seed=1)
        assert outcome.trace.iterations
        for record in outcome.trace.iterations:
            assert record.m_after < record.m_before
            assert record.attempts <= settings.max_retries + 2
        data = outcome.trace.to_dict()
        assert len(data["iterations"]) == len(outcome.trace.iterations)

    def test_audit_reference_stays_inside(self, random_polygon):
        cover = build_cover(random_polygon)
        outcome = search(random_polygon, cover, settings=SearchSettings(base_case=8), seed=2, audit=True)
        assert outcome.trace.audit_failures == 0

    def test_same_seed_same_trace(self, random_polygon):
        cover = build_cover(random_polygon)
        settings = SearchSettings(base_case=8)
        a = search(random_polygon, cover, settings=settings, seed=5).trace.to_dict()
        b = search(random_polygon, cover, settings=settings, seed=5).trace.to_dict()
        assert a == b

    def test_no_progress_is_an_error_type(self):
        assert NoProgress.exit_code == 2


class TestStalledIterations:
    settings = SearchSettings(base_case=8, max_retries=1, fallback_subset=64)

    def test_empty_nets_fall_back(self, square, monkeypatch):
        monkeypatch.setattr(prune_search, "epsilon_net_chords", lambda chords, eps, seed: [])
        outcome = search(square, build_cover(square), settings=self.settings, seed=3)
        first = outcome.trace.iterations[0]
        assert first.attempts == self.settings.max_retries + 2
        assert first.fallback
        assert outcome.trace.retries >= self.settings.max_retries + 1

    def test_fallback_keeps_center(self, square, monkeypatch):
        monkeypatch.setattr(prune_search, "epsilon_net_chords", lambda chords, eps, seed: [])
        result = geodesic_center(square, settings=self.settings, seed=3)
        assert result.radius == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-9)
        assert result.trace.iterations[0].fallback

    def test_empty_fallback_is_no_progress(self, square, monkeypatch):
        monkeypatch.setattr(prune_search, "epsilon_net_chords", lambda chords, eps, seed: [])
        monkeypatch.setattr(prune_search, "_fallback_net", lambda P, index, R, settings, seed: [])
        with pytest.raises(NoProgress):
            search(square, build_cover(square), settings=self.settings)


class TestOracleFailures:
    def test_single_failure_resamples(self, square, monkeypatch):
        original = prune_search.refine
        calls = []

        def flaky(*args, **kwargs):
            calls.append(1)
            if len(calls) == 1:
                raise InconsistentOracles("两条切分弦给出矛盾的结论")
            return original(*args, **kwargs)

        monkeypatch.setattr(prune_search, "refine", flaky)
        result = geodesic_center(square, settings=SearchSettings(base_case=8), seed=1)
        assert result.trace.oracle_failures == 1
        assert result.trace.iterations[0].attempts >= 2
        assert result.radius == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-9)

    def test_persistent_failure_solves_in_cell(self, square, monkeypatch):
        def broken(*args, **kwargs):
            raise InconsistentOracles("两条切分弦给出矛盾的结论")

        monkeypatch.setattr(prune_search, "refine", broken)
        settings = SearchSettings(base_case=8)
        outcome = search(square, build_cover(square), settings=settings)
        assert isinstance(outcome.result, FinalRegion)
        assert outcome.trace.oracle_failures == settings.max_retries + 2
        result = geodesic_center(square, settings=settings)
        assert result.point == pytest.approx((0.5, 0.5), abs=1e-9)
        assert result.radius == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-9)
