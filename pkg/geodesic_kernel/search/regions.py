"""
搜索单元的平面几何

单元用 shapely 多边形表示；这里放切割、裁剪与局部侧判定这些与预言机无关的操作。
"""
import logging
import math
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from shapely.geometry import LineString, MultiPolygon, Point as ShapelyPoint, Polygon as ShapelyPolygon
from shapely.geometry.base import BaseGeometry
from shapely.ops import polygonize, split, unary_union

from ..geometry import Point, Polygon

logger = logging.getLogger(__name__)

Segment = Tuple[Point, Point]


class Verdict(str, Enum):
    """中心相对有向弦 a→b 的位置"""
    LEFT = "LeftOfChord"
    RIGHT = "RightOfChord"
    ON = "OnChord"


def polygon_region(P: Polygon) -> ShapelyPolygon:
    return ShapelyPolygon([tuple(v) for v in P.vertices])


def region_extent(region: BaseGeometry) -> float:
    """包围盒较长边"""
    minx, miny, maxx, maxy = region.bounds
    return max(maxx - minx, maxy - miny)


def _line_parts(geom: BaseGeometry) -> List[LineString]:
    if geom.is_empty:
        return []
    if isinstance(geom, LineString):
        return [geom]
    parts = getattr(geom, "geoms", [])
    out: List[LineString] = []
    for g in parts:
        out.extend(_line_parts(g))
    return out


def _oriented(part: LineString, d: Sequence[float]) -> Segment:
    (x0, y0), (x1, y1) = part.coords[0], part.coords[-1]
    if (x1 - x0) * d[0] + (y1 - y0) * d[1] < 0.0:
        x0, y0, x1, y1 = x1, y1, x0, y0
    return Point(x0, y0), Point(x1, y1)


def clip_segment(region: BaseGeometry, p: Sequence[float], q: Sequence[float], tol: float) -> Optional[Segment]:
    """
    线段 pq 与区域的交

    测地凸区域与弦的交是连通的；数值上若碎成多段，取最长的一段。
    方向与 p→q 一致；长度不超过 tol 时返回 None。
    """
    inter = region.intersection(LineString([tuple(p), tuple(q)]))
    parts = [g for g in _line_parts(inter) if g.length > tol]
    if not parts:
        return None
    longest = max(parts, key=lambda g: g.length)
    return _oriented(longest, (q[0] - p[0], q[1] - p[1]))


def line_piece_through(
    region: BaseGeometry,
    x: Sequence[float],
    direction: Sequence[float],
    tol: float,
) -> Optional[Segment]:
    """过 x、沿 direction 的直线与区域之交中离 x 最近的那一段"""
    norm = math.hypot(direction[0], direction[1])
    minx, miny, maxx, maxy = region.bounds
    reach = 2.0 * (math.hypot(maxx - minx, maxy - miny) + abs(x[0] - minx) + abs(x[1] - miny)) + 1.0
    dx, dy = direction[0] / norm * reach, direction[1] / norm * reach
    line = LineString([(x[0] - dx, x[1] - dy), (x[0] + dx, x[1] + dy)])
    parts = [g for g in _line_parts(region.intersection(line)) if g.length > tol]
    if not parts:
        return None
    anchor = ShapelyPoint(x[0], x[1])
    nearest = min(parts, key=lambda g: g.distance(anchor))
    return _oriented(nearest, direction)


def left_normal(seg: Segment) -> Tuple[float, float]:
    (p, q) = seg
    dx, dy = q[0] - p[0], q[1] - p[1]
    norm = math.hypot(dx, dy)
    return -dy / norm, dx / norm


def _rings(cell: BaseGeometry) -> List[Sequence[Tuple[float, float]]]:
    if isinstance(cell, ShapelyPolygon):
        return [list(cell.exterior.coords)]
    out: List[Sequence[Tuple[float, float]]] = []
    for g in getattr(cell, "geoms", []):
        out.extend(_rings(g))
    return out


def local_side(cell: BaseGeometry, seg: Segment) -> Optional[Verdict]:
    """
    单元贴着 seg 的那一侧

    在单元边界上找两端都贴着 seg 的最长边，在其中点两侧各探一点；
    单元不以正长度贴着 seg 时返回 None。
    """
    if cell.is_empty or cell.area <= 0.0:
        return None
    line = LineString(seg)
    magnitude = max(abs(c) for pt in seg for c in pt)
    tol = max(1e-6 * min(region_extent(cell), line.length), 1e-14 * magnitude)
    best: Optional[Tuple[Tuple[float, float], Tuple[float, float]]] = None
    best_len = 0.0
    for ring in _rings(cell):
        for a, b in zip(ring, ring[1:]):
            length = math.hypot(b[0] - a[0], b[1] - a[1])
            if length <= best_len:
                continue
            if line.distance(ShapelyPoint(a)) <= tol and line.distance(ShapelyPoint(b)) <= tol:
                best, best_len = (a, b), length
    if best is None or best_len <= 2.0 * tol:
        return None
    mx, my = 0.5 * (best[0][0] + best[1][0]), 0.5 * (best[0][1] + best[1][1])
    nx, ny = left_normal(seg)
    delta = 0.01 * min(best_len, cell.area / best_len)
    if cell.contains(ShapelyPoint(mx + delta * nx, my + delta * ny)):
        return Verdict.LEFT
    if cell.contains(ShapelyPoint(mx - delta * nx, my - delta * ny)):
        return Verdict.RIGHT
    return None


def _merge(pieces: List[BaseGeometry]) -> BaseGeometry:
    if not pieces:
        return ShapelyPolygon()
    merged = unary_union(pieces)
    if isinstance(merged, MultiPolygon):
        logger.debug(f"切分的一侧有 {len(merged.geoms)} 块，保留面积最大的一块")
        return max(merged.geoms, key=lambda g: g.area)
    return merged


def _sides(pieces: List[BaseGeometry], seg: Segment) -> Tuple[List[BaseGeometry], List[BaseGeometry]]:
    left: List[BaseGeometry] = []
    right: List[BaseGeometry] = []
    for piece in pieces:
        side = local_side(piece, seg)
        if side is Verdict.LEFT:
            left.append(piece)
        elif side is Verdict.RIGHT:
            right.append(piece)
    return left, right


def split_region(region: BaseGeometry, seg: Segment) -> Tuple[BaseGeometry, BaseGeometry]:
    """
    沿贯穿区域的线段把区域切成 (左侧, 右侧)

    只沿线段本身切开，不延长成整条直线，所以非凸区域里线段之外的部分不会被切走。
    线段两端各延长一点，保证切割线真正穿过边界；shapely 的 split 切不开时改用 polygonize。
    某一侧切不出来时返回空多边形。
    """
    p, q = seg
    dx, dy = q[0] - p[0], q[1] - p[1]
    length = math.hypot(dx, dy)
    ext = 1e-9 * length + 1e-12 * region_extent(region)
    ux, uy = dx / length, dy / length
    cutter = LineString([(p[0] - ext * ux, p[1] - ext * uy), (q[0] + ext * ux, q[1] + ext * uy)])
    left, right = _sides(list(getattr(split(region, cutter), "geoms", [])), seg)
    if not (left and right):
        logger.debug("split 未能切开区域，改用 polygonize")
        extent = region_extent(region)
        faces = [
            f for f in polygonize(unary_union([region.boundary, cutter]))
            if f.area > 1e-14 * extent * extent and region.covers(f.representative_point())
        ]
        left, right = _sides(faces, seg)
    return _merge(left), _merge(right)


def boundary_directions(region: BaseGeometry, x: Sequence[float], tol: float) -> List[Tuple[float, float]]:
    """单元边界上经过 x 附近的边的方向（两个朝向），以及 x 指向这些边端点的方向"""
    out: List[Tuple[float, float]] = []
    for ring in _rings(region):
        coords = np.asarray(ring, dtype=float)
        a, b = coords[:-1], coords[1:]
        d = b - a
        dd = np.maximum((d * d).sum(axis=1), 1e-300)
        t = np.clip(((x[0] - a[:, 0]) * d[:, 0] + (x[1] - a[:, 1]) * d[:, 1]) / dd, 0.0, 1.0)
        gap = np.hypot(a[:, 0] + t * d[:, 0] - x[0], a[:, 1] + t * d[:, 1] - x[1])
        for k in np.flatnonzero(gap <= tol):
            out.append((float(d[k, 0]), float(d[k, 1])))
            out.append((float(-d[k, 0]), float(-d[k, 1])))
            for end in (a[k], b[k]):
                v = (float(end[0] - x[0]), float(end[1] - x[1]))
                if math.hypot(*v) > tol:
                    out.append(v)
    return out
