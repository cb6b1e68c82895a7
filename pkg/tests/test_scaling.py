import time

import pytest

from geodesic_kernel import build_cover
from geodesic_kernel.config import SearchSettings
from geodesic_kernel.geometry import random_convex_polygon, random_simple_polygon
from geodesic_kernel.search import search

SIZES = [16, 32, 64, 128]


def _timed(P):
    start = time.perf_counter()
    cover = build_cover(P)
    built = time.perf_counter()
    outcome = search(P, cover, settings=SearchSettings(base_case=8), seed=0)
    done = time.perf_counter()
    return cover, outcome, built - start, done - built


@pytest.mark.slow
@pytest.mark.parametrize("make", [random_convex_polygon, random_simple_polygon], ids=["convex", "simple"])
def test_growth_per_doubling(make, capsys):
    rows = []
    for n in SIZES:
        P = make(n, 0)
        cover, outcome, t_cover, t_search = _timed(P)
        rows.append((n, len(cover), cover.stats.sum_hourglass_size, t_cover, t_search, outcome.trace.halving_rate()))
    with capsys.disabled():
        print(f"\n{make.__name__}")
        print("n | |τ| | Σ|H| | 覆盖(s) | 搜索(s) | 减半比例")
        for n, size, sum_h, t_cover, t_search, rate in rows:
            print(f"{n} | {size} | {sum_h} | {t_cover:.3f} | {t_search:.3f} | {rate:.2f}")
    for n, size, sum_h, *_ in rows:
        assert size <= 40 * n
        assert sum_h <= 40 * n
    # 规模翻倍时总时间不超过 16 倍，即增长不快于 n⁴
    for small, large in zip(rows, rows[1:]):
        before = small[3] + small[4]
        after = large[3] + large[4]
        if before > 0.05:
            assert after / before < 16.0
