"""
漏斗覆盖

沿主链逐条边处理：π(v, u_i) 与 π(v, u_{i+1}) 在 LCA w 处分开，夹出一个以 ab 为底、
两侧为凹链的伪三角形。两条链每个顶点的最短路径区域在底边上对应一个区间，
区间端点要么是链边延长线打到底边的点（情形 1），要么是链的端点本身（情形 2）。
"""
import logging
from typing import List, Optional, Tuple

from ..geometry import Point, Polygon
from ..geometry.predicates import line_intersection_param
from ..paths import ShortestPathTree
from ..structure import Funnel
from .triangles import ApexedTriangle, PieceStats

logger = logging.getLogger(__name__)


def _break_param(prev: Point, cur: Point, a: Point, b: Point) -> Optional[float]:
    """链边 prev→cur 的延长线与底边 ab 的交点参数"""
    hit = line_intersection_param(cur, (cur[0] - prev[0], cur[1] - prev[1]), a, b)
    if hit is None:
        return None
    s, t = hit
    if s < -1e-12:
        return None
    return min(1.0, max(0.0, t))


def _edge_point(a: Point, b: Point, t: float) -> Point:
    if t <= 0.0:
        return a
    if t >= 1.0:
        return b
    return Point(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def cover_chain_edge(
    P: Polygon,
    T_v: ShortestPathTree,
    edge: Tuple[int, int],
    stats: Optional[PieceStats] = None,
) -> List[ApexedTriangle]:
    """
    主链上一条边 (u_i, u_{i+1}) 对应的三角形

    逐边剥离：每条主链边单独取两端在 T_v 中的 LCA，沿两条树路径把底边切成楔形，
    不做 Euler 序上的换根。单条边的代价与两条树路径的长度成正比，整条主链合计 O(|漏斗|²)。
    """
    stats = stats or PieceStats()
    ui, uj = edge
    pa, pb = P[ui], P[uj]
    w = T_v.lca(ui, uj)
    left = T_v.path_up(ui, w)[::-1]   # w = l_0, ..., l_p = u_i
    right = T_v.path_up(uj, w)[::-1]  # w = r_0, ..., r_q = u_{i+1}
    p, q = len(left) - 1, len(right) - 1
    pts = T_v.points

    # 底边上的断点（参数从 u_i 的 0 到 u_{i+1} 的 1）
    breaks: List[float] = [0.0]
    apexes: List[int] = []
    for j in range(p - 1, -1, -1):
        apexes.append(left[j])
        if j >= 1:
            t = _break_param(pts[left[j - 1]], pts[left[j]], pa, pb)
            breaks.append(breaks[-1] if t is None else t)
            stats.ray_breaks += 1
    if p == 0:
        apexes.append(w)
    if q >= 1:
        if q == 1:
            breaks.append(1.0)
            stats.chain_breaks += 1
        else:
            t = _break_param(pts[right[0]], pts[right[1]], pa, pb)
            breaks.append(1.0 if t is None else t)
            stats.ray_breaks += 1
    for j in range(1, q):
        apexes.append(right[j])
        if j + 1 < q:
            t = _break_param(pts[right[j]], pts[right[j + 1]], pa, pb)
            breaks.append(1.0 if t is None else t)
            stats.ray_breaks += 1
        else:
            breaks.append(1.0)
            stats.chain_breaks += 1
    if q == 0:
        breaks.append(1.0)
        stats.chain_breaks += 1
    # 浮点误差下保持单调
    for k in range(1, len(breaks)):
        breaks[k] = max(breaks[k], breaks[k - 1])

    out: List[ApexedTriangle] = []
    for k, apex in enumerate(apexes):
        lo, hi = breaks[k], breaks[k + 1]
        tri = ApexedTriangle(
            pts[apex], _edge_point(pa, pb, lo), _edge_point(pa, pb, hi),
            T_v.root_id, float(T_v.dist[apex]), apex,
        )
        if hi - lo <= 1e-15 or tri.area <= 1e-14 * P.scale() ** 2:
            stats.dropped += 1
            continue
        out.append(tri)
    return out


def cover_funnel(
    P: Polygon,
    fn: Funnel,
    T_v: ShortestPathTree,
    stats: Optional[PieceStats] = None,
) -> List[ApexedTriangle]:
    """
    漏斗 F(v, C_v) 的带顶点三角形

    三角形内部两两不交，并起来恰为漏斗；定义点都是 v。

    Args:
        P: 多边形
        fn: 漏斗
        T_v: 以 v 为根的最短路径树
        stats: 可选的计数器，累加断点与丢弃数
    """
    stats = stats if stats is not None else PieceStats()
    out: List[ApexedTriangle] = []
    for edge in fn.chain_edges():
        out.extend(cover_chain_edge(P, T_v, edge, stats))
    logger.debug(
        f"漏斗 v={fn.apex}: {len(out)} 个三角形，射线断点 {stats.ray_breaks}，"
        f"链端断点 {stats.chain_breaks}，丢弃 {stats.dropped}"
    )
    return out
