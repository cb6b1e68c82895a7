"""
最终单元内求最小点

φ 沿单元内的任意线段是凸的：过单元质心做一条横切或纵切的弦段，问预言机中心在哪一侧，
只沿这条弦段把单元切开并保留那一侧，直到单元直径小于阈值或预言机直接给出中心。
单元不必是凸的，直线在单元里的其他几段不参与切分。
"""
import logging
import math
from typing import Optional, Sequence, Tuple, Union

from shapely.geometry.base import BaseGeometry

from ..config import SearchSettings
from ..cover import ApexedTriangle, TriangleArrays, envelope
from ..geometry import Point, Polygon
from .cells import SearchCell
from .oracle import side_of_center
from .regions import Verdict, line_piece_through, region_extent, split_region

logger = logging.getLogger(__name__)


def solve_in_region(
    P: Polygon,
    region: Union[SearchCell, BaseGeometry],
    triangles: Sequence[ApexedTriangle],
    settings: Optional[SearchSettings] = None,
) -> Tuple[Point, float]:
    """
    在单元内二分求 φ 的最小点

    Args:
        P: 多边形
        region: 包含中心的单元
        triangles: 与单元相交的全部三角形
        settings: 搜索参数

    Returns:
        (中心, φ(中心))
    """
    settings = settings or SearchSettings()
    Q = region.region if isinstance(region, SearchCell) else region
    arrays = TriangleArrays(list(triangles))
    best_point: Optional[Point] = None
    best_value = math.inf
    steps = 0
    for steps in range(1, settings.max_bisections + 1):
        extent = region_extent(Q)
        if extent <= settings.region_diameter:
            break
        c = Q.centroid
        if not Q.covers(c):
            c = Q.representative_point()
        minx, miny, maxx, maxy = Q.bounds
        direction = (0.0, 1.0) if maxx - minx >= maxy - miny else (1.0, 0.0)
        seg = line_piece_through(Q, (c.x, c.y), direction, 1e-9 * extent)
        if seg is None:
            break
        dec = side_of_center(arrays, seg, region=Q, settings=settings)
        if dec.value < best_value:
            best_point, best_value = dec.point, dec.value
        if dec.verdict is Verdict.ON:
            logger.debug(f"第 {steps} 次二分命中中心 {dec.point}")
            return dec.point, dec.value
        left, right = split_region(Q, seg)
        nxt = left if dec.verdict is Verdict.LEFT else right
        if nxt.is_empty or nxt.area <= 0.0:
            logger.debug(f"第 {steps} 次二分后区域退化，停止")
            break
        Q = nxt
    inner = Q.representative_point()
    value, _ = envelope(arrays, (inner.x, inner.y), scale=P.scale())
    logger.debug(f"二分 {steps} 次后区域直径 {region_extent(Q):.3e}")
    if best_point is not None and best_value < value - 1e-12:
        return best_point, best_value
    return Point(inner.x, inner.y), value
