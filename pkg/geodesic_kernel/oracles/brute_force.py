"""
暴力预言机

与主流程完全独立：顶点可见图 + Floyd–Warshall 得到顶点两两测地距离；
F_P(x) = max_w min_{u 对 x 可见} |x - u| + D[u, w]，x 对 u 的可见性用 shapely covers 判断；
在稠密网格上取最小，再逐级缩小窗口细化。
"""
import heapq
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import shapely
from shapely.geometry import Polygon as ShapelyPolygon

from ..errors import PointOutside
from ..geometry import Point, Polygon, contains, segment_inside

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BruteForceCenter:
    """
    网格 + 细化得到的中心

    属性:
        point: 中心
        radius: F_P(中心)
        grid_point: 细化前的网格最优点
    """
    point: Point
    radius: float
    grid_point: Point


def visibility_matrix(P: Polygon) -> np.ndarray:
    """顶点两两可见性（精确谓词）"""
    n = P.n
    vis = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1) or segment_inside(P, P[i], P[j]):
                vis[i, j] = vis[j, i] = True
    return vis


def vertex_distance_matrix(P: Polygon, vis: Optional[np.ndarray] = None) -> np.ndarray:
    """可见图上的 Floyd–Warshall"""
    vis = visibility_matrix(P) if vis is None else vis
    pts = P.as_array()
    euclid = np.hypot(pts[:, None, 0] - pts[None, :, 0], pts[:, None, 1] - pts[None, :, 1])
    D = np.where(vis, euclid, np.inf)
    for k in range(P.n):
        D = np.minimum(D, D[:, k:k + 1] + D[k:k + 1, :])
    return D


def visibility_distances(P: Polygon, source: Sequence[float]) -> np.ndarray:
    """
    从任意点出发到各顶点的测地距离（可见图上的 Dijkstra）

    Raises:
        PointOutside: source 不在 P 内
    """
    if not contains(P, source):
        raise PointOutside(f"点 {tuple(source)} 不在多边形内")
    n = P.n
    vis = visibility_matrix(P)
    dist = np.full(n, np.inf)
    heap = []
    for v in range(n):
        if segment_inside(P, source, P[v]):
            dist[v] = math.dist(source, P[v])
            heapq.heappush(heap, (dist[v], v))
    done = np.zeros(n, dtype=bool)
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for w in np.flatnonzero(vis[u]):
            nd = d + math.dist(P[u], P[int(w)])
            if nd < dist[w]:
                dist[w] = nd
                heapq.heappush(heap, (nd, int(w)))
    return dist


def _shape(P: Polygon) -> ShapelyPolygon:
    shape = ShapelyPolygon(P.as_array())
    shapely.prepare(shape)
    return shape


def _inside_mask(pts: np.ndarray, shape: ShapelyPolygon) -> np.ndarray:
    """点是否在闭多边形内（含边界）"""
    return np.asarray(shapely.covers(shape, shapely.points(pts)), dtype=bool)


def _visible_vertices(x: np.ndarray, poly: np.ndarray, shape: ShapelyPolygon) -> np.ndarray:
    """x 到各顶点的线段是否整段落在闭多边形内；擦过反射顶点或沿边界走都算可见"""
    segments = shapely.linestrings(np.stack([np.broadcast_to(x, poly.shape), poly], axis=1))
    same = (poly[:, 0] == x[0]) & (poly[:, 1] == x[1])
    return same | np.asarray(shapely.covers(shape, segments), dtype=bool)


def farthest_value(
    P: Polygon,
    x: Sequence[float],
    D: Optional[np.ndarray] = None,
    shape: Optional[ShapelyPolygon] = None,
) -> float:
    """
    F_P(x)：x 到最远顶点的测地距离

    Args:
        D: 顶点距离矩阵（缺省时计算）
        shape: 已 prepare 的 shapely 多边形（缺省时构造）
    """
    D = vertex_distance_matrix(P) if D is None else D
    shape = _shape(P) if shape is None else shape
    poly = P.as_array()
    p = np.asarray(x, dtype=float)
    vis = _visible_vertices(p, poly, shape)
    if not vis.any():
        return math.inf
    direct = np.where(vis, np.hypot(poly[:, 0] - p[0], poly[:, 1] - p[1]), np.inf)
    return float(np.min(direct[:, None] + D, axis=0).max())


def brute_force_center(
    P: Polygon,
    grid: int = 256,
    D: Optional[np.ndarray] = None,
    levels: int = 48,
) -> BruteForceCenter:
    """
    稠密网格上最小化 F_P，再逐级缩小窗口细化

    Args:
        P: 多边形
        grid: 每个方向的网格点数
        D: 顶点距离矩阵（缺省时计算）
        levels: 细化层数，每层窗口减半

    Returns:
        BruteForceCenter
    """
    D = vertex_distance_matrix(P) if D is None else D
    shape = _shape(P)
    poly = P.as_array()
    minx, miny, maxx, maxy = P.bbox()
    hx, hy = (maxx - minx) / grid, (maxy - miny) / grid
    xs = minx + (np.arange(grid) + 0.5) * hx
    ys = miny + (np.arange(grid) + 0.5) * hy
    gx, gy = np.meshgrid(xs, ys)
    pts = np.column_stack([gx.ravel(), gy.ravel()])
    pts = pts[_inside_mask(pts, shape)]
    if len(pts) == 0:
        pts = np.array([[float(np.mean(poly[:, 0])), float(np.mean(poly[:, 1]))]])
    values = np.array([farthest_value(P, p, D, shape) for p in pts])
    k = int(np.argmin(values))
    best, best_value = pts[k].copy(), float(values[k])
    grid_point = Point(float(best[0]), float(best[1]))
    logger.debug(f"网格 {grid}×{grid}: {len(pts)} 个内点，最优 {grid_point}，F={best_value:.9g}")

    w = 2.0 * max(hx, hy)
    offsets = np.linspace(-1.0, 1.0, 9)
    for _ in range(levels):
        cand = np.array([[best[0] + dx * w, best[1] + dy * w] for dx in offsets for dy in offsets])
        cand = cand[_inside_mask(cand, shape)]
        if len(cand):
            vals = np.array([farthest_value(P, p, D, shape) for p in cand])
            j = int(np.argmin(vals))
            if vals[j] < best_value:
                best, best_value = cand[j].copy(), float(vals[j])
        w *= 0.5
    return BruteForceCenter(Point(float(best[0]), float(best[1])), best_value, grid_point)
