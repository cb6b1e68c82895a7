"""
测试实例生成

随机点 + 2-opt 去交叉生成简单多边形；椭圆上排序角度生成凸多边形。
"""
import logging
import math
from typing import List, Optional, Tuple

import numpy as np

from ..errors import GeodesicError
from .polygon import Polygon, validate_polygon
from .predicates import Point, segments_cross

logger = logging.getLogger(__name__)


def _first_crossing(points: List[Point]) -> Optional[Tuple[int, int]]:
    """第一对真相交的非相邻边，浮点预筛后精确确认"""
    n = len(points)
    arr = np.asarray(points, dtype=float)
    a, b = arr, np.roll(arr, -1, axis=0)
    for i in range(n - 2):
        p1, p2 = a[i], b[i]
        q1, q2 = a[i + 2:], b[i + 2:]
        d1 = (p2[0] - p1[0]) * (q1[:, 1] - p1[1]) - (p2[1] - p1[1]) * (q1[:, 0] - p1[0])
        d2 = (p2[0] - p1[0]) * (q2[:, 1] - p1[1]) - (p2[1] - p1[1]) * (q2[:, 0] - p1[0])
        d3 = (q2[:, 0] - q1[:, 0]) * (p1[1] - q1[:, 1]) - (q2[:, 1] - q1[:, 1]) * (p1[0] - q1[:, 0])
        d4 = (q2[:, 0] - q1[:, 0]) * (p2[1] - q1[:, 1]) - (q2[:, 1] - q1[:, 1]) * (p2[0] - q1[:, 0])
        for k in np.nonzero((d1 * d2 <= 0.0) & (d3 * d4 <= 0.0))[0]:
            j = i + 2 + int(k)
            if i == 0 and j == n - 1:
                continue
            if segments_cross(points[i], points[(i + 1) % n], points[j], points[(j + 1) % n]):
                return i, j
    return None


def random_simple_polygon(n: int, seed: int) -> Polygon:
    """
    随机简单多边形

    Args:
        n: 顶点数（≥ 3）
        seed: 随机种子，同一 (n, seed) 结果完全一致

    Returns:
        逆时针简单多边形
    """
    if n < 3:
        raise ValueError("n 必须 ≥ 3")
    rng = np.random.default_rng(seed)
    attempt = 0
    while True:
        raw = np.round(rng.random((n, 2)), 12)
        points = [Point(float(x), float(y)) for x, y in raw]
        # 每次翻转都严格缩短总边长，因此必然终止
        while True:
            hit = _first_crossing(points)
            if hit is None:
                break
            i, j = hit
            points[i + 1:j + 1] = points[i + 1:j + 1][::-1]
        try:
            return validate_polygon(points)
        except GeodesicError as e:
            attempt += 1
            logger.debug(f"随机多边形重试 {attempt}: {e}")


def random_convex_polygon(n: int, seed: int, radius: float = 1.0) -> Polygon:
    """椭圆上排序角度的随机凸多边形"""
    if n < 3:
        raise ValueError("n 必须 ≥ 3")
    rng = np.random.default_rng(seed)
    while True:
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, n))
        gaps = np.diff(np.concatenate([angles, [angles[0] + 2.0 * math.pi]]))
        if gaps.max() < math.pi and gaps.min() > 1e-6:
            break
    ratio = float(rng.uniform(0.5, 1.0))
    tilt = float(rng.uniform(0.0, math.pi))
    pts = []
    for a in angles:
        x, y = radius * math.cos(a), radius * ratio * math.sin(a)
        pts.append((x * math.cos(tilt) - y * math.sin(tilt), x * math.sin(tilt) + y * math.cos(tilt)))
    return validate_polygon(pts)


def regular_polygon(n: int, radius: float = 1.0) -> Polygon:
    """正 n 边形，首顶点在 x 轴正方向"""
    return validate_polygon(
        [(radius * math.cos(2.0 * math.pi * k / n), radius * math.sin(2.0 * math.pi * k / n)) for k in range(n)]
    )
