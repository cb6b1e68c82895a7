import json
import os

import pytest

from geodesic_kernel.cache import CoverCache
from geodesic_kernel.cover import build_cover


@pytest.fixture
def cache(tmp_path):
    return CoverCache(str(tmp_path / "covers"))


def test_miss_returns_none(cache, square):
    assert cache.get_cover(square) is None
    assert cache.get_cache_info(square) == {}


def test_store_and_reload(cache, square):
    cover = build_cover(square)
    cache.store_cover(square, cover)
    fresh = CoverCache(cache.cache_dir)
    loaded = fresh.get_cover(square)
    assert loaded is not None
    assert loaded.triangles == cover.triangles
    info = fresh.get_cache_info(square)
    assert info["n"] == 4
    assert info["triangle_count"] == 16
    assert info["version"] == 1


def test_version_increments(cache, square):
    cover = build_cover(square)
    cache.store_cover(square, cover)
    cache.store_cover(square, cover)
    assert cache.get_cache_info(square)["version"] == 2


def test_key_ignores_orientation(square):
    from geodesic_kernel.geometry import validate_polygon

    reversed_square = validate_polygon(list(reversed(square.vertices)))
    assert CoverCache.cache_key(reversed_square) == CoverCache.cache_key(square)


def test_corrupt_file_is_ignored(cache, square):
    path = os.path.join(cache.cache_dir, CoverCache.cache_key(square) + ".json")
    with open(path, "w", encoding="utf-8") as f:
        f.write("{not json")
    assert cache.get_cover(square) is None


def test_clear_single_and_all(cache, square, rectangle):
    cache.store_cover(square, build_cover(square))
    cache.store_cover(rectangle, build_cover(rectangle))
    cache.clear_cache(square)
    assert CoverCache(cache.cache_dir).get_cover(square) is None
    assert CoverCache(cache.cache_dir).get_cover(rectangle) is not None
    cache.clear_cache()
    assert os.listdir(cache.cache_dir) == ["metadata.json"]
    with open(os.path.join(cache.cache_dir, "metadata.json"), encoding="utf-8") as f:
        assert json.load(f) == {}
