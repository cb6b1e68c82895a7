"""
沙漏覆盖

对过渡边 ab 的沙漏，用 a、b 两棵最短路径树给每个顶点打标号，再把每个可见顶点 v
的可见扇形 (s_0, v, s_k) 按孩子 u 的延长线切成楔形；每个楔形取在其中拉紧的孩子
所能到达的最远距离作为常数。
"""
import logging
import math
from typing import Dict, List, Optional, Set, Tuple

from ..geometry import Point, Polygon, orient
from ..geometry.predicates import line_intersection_param
from ..paths import ShortestPathTree, is_taut
from ..structure import Hourglass
from .triangles import ApexedTriangle, PieceStats, VertexLabels

logger = logging.getLogger(__name__)

_T_EPS = 1e-12


def _heights(T: ShortestPathTree, members: Set[int]) -> Tuple[Dict[int, float], Dict[int, int]]:
    """限制在 members 内的子树高度及实现它的顶点"""
    order = sorted(members, key=lambda k: -int(T.depth[k]))
    height = {k: 0.0 for k in members}
    arg = {k: k for k in members}
    for k in order:
        par = int(T.parent[k])
        if par in members:
            cand = height[k] + float(T.dist[k] - T.dist[par])
            if cand > height[par]:
                height[par], arg[par] = cand, arg[k]
    return height, arg


def _children(T: ShortestPathTree, v: int, members: Set[int]) -> List[int]:
    return [u for u in T.children[v] if u in members]


def vertex_labels(P: Polygon, h: Hourglass, T_a: ShortestPathTree, T_b: ShortestPathTree) -> VertexLabels:
    """计算 c、d_l、d_r、可见性与孩子类型"""
    members = h.vertices()
    labels = VertexLabels()
    height_a, _ = _heights(T_a, members)
    for v in members:
        labels.visible[v] = int(T_a.parent[v]) != int(T_b.parent[v])
    for v in members:
        in_a, in_b = set(_children(T_a, v, members)), set(_children(T_b, v, members))
        va, vb = int(T_a.parent[v]), int(T_b.parent[v])
        for u in in_a | in_b:
            if u in in_a and u in in_b:
                kind = 1
            elif u in in_a and va >= 0 and orient(P[va], P[v], P[u]) > 0:
                kind = 2
            elif u in in_b and vb >= 0 and orient(P[vb], P[v], P[u]) < 0:
                kind = 3
            else:
                kind = 0
            labels.child_type[(v, u)] = kind
    labels.c = {v: 0.0 for v in members}
    for (v, u), kind in labels.child_type.items():
        if kind == 1:
            labels.c[v] = max(labels.c[v], math.dist(P[v], P[u]) + height_a[u])
    for tree, store, kind in ((T_a, labels.d_l, 2), (T_b, labels.d_r, 3)):
        for v in sorted(members, key=lambda k: -int(tree.depth[k])):
            best = labels.c[v]
            for u in _children(tree, v, members):
                if labels.child_type.get((v, u)) == kind:
                    best = max(best, store[u] + math.dist(P[v], P[u]))
            store[v] = best
    return labels


def _hit_param(v: Point, direction: Tuple[float, float], a: Point, b: Point) -> Optional[float]:
    """从 v 沿 direction 的射线与直线 ab 的交点参数"""
    hit = line_intersection_param(v, direction, a, b)
    if hit is None:
        return None
    s, t = hit
    if s < 0.0:
        return None
    return t


def _edge_point(a: Point, b: Point, t: float) -> Point:
    if t <= 0.0:
        return a
    if t >= 1.0:
        return b
    return Point(a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]))


def cover_hourglass(
    P: Polygon,
    h: Hourglass,
    T_a: ShortestPathTree,
    T_b: ShortestPathTree,
    stats: Optional[PieceStats] = None,
) -> List[ApexedTriangle]:
    """
    沙漏 H_ab 的带顶点三角形

    每个三角形的底边落在线段 ab 上。

    Args:
        P: 多边形
        h: 过渡边 ab 的沙漏
        T_a, T_b: 以 a、b 为根的最短路径树
        stats: 可选的计数器

    Returns:
        三角形列表
    """
    a, b = h.edge
    pa, pb = P[a], P[b]
    members = h.vertices()
    labels = vertex_labels(P, h, T_a, T_b)
    height_a, arg_a = _heights(T_a, members)
    height_b, arg_b = _heights(T_b, members)
    out: List[ApexedTriangle] = []
    dropped = 0
    for v in sorted(members - {a, b}):
        if not labels.visible[v]:
            continue
        va, vb = int(T_a.parent[v]), int(T_b.parent[v])
        pv = P[v]
        t0 = 0.0 if va == a else _hit_param(pv, (P[va][0] - pv[0], P[va][1] - pv[1]), pa, pb)
        t1 = 1.0 if vb == b else _hit_param(pv, (P[vb][0] - pv[0], P[vb][1] - pv[1]), pa, pb)
        if t0 is None or t1 is None:
            logger.debug(f"顶点 {v} 的可见射线与 ab 平行，跳过")
            continue
        t0, t1 = min(1.0, max(0.0, t0)), min(1.0, max(0.0, t1))
        if t0 > t1:
            t0, t1 = t1, t0
        if t1 - t0 <= _T_EPS:
            continue
        kids = [(u, height_a[u], arg_a[u]) for u in _children(T_a, v, members)]
        kids += [(u, height_b[u], arg_b[u]) for u in _children(T_b, v, members) if u not in T_a.children[v]]
        cuts = {t0, t1}
        for u, _, _ in kids:
            t = _hit_param(pv, (pv[0] - P[u][0], pv[1] - P[u][1]), pa, pb)
            if t is not None and t0 + _T_EPS < t < t1 - _T_EPS:
                cuts.add(t)
        ts = sorted(cuts)
        pieces: List[Tuple[float, float, int, float]] = []
        for lo, hi in zip(ts, ts[1:]):
            s_lo, s_hi = _edge_point(pa, pb, lo), _edge_point(pa, pb, hi)
            x = ((pv[0] + s_lo[0] + s_hi[0]) / 3.0, (pv[1] + s_lo[1] + s_hi[1]) / 3.0)
            value, definer = 0.0, v
            for u, hu, wu in kids:
                if not is_taut(P, x, pv, P[u]):
                    continue
                cand = math.dist(pv, P[u]) + hu
                if cand > value:
                    value, definer = cand, wu
            # 相邻楔形常数相同则合并
            if pieces and pieces[-1][2] == definer and abs(pieces[-1][3] - value) <= 1e-12:
                pieces[-1] = (pieces[-1][0], hi, definer, value)
            else:
                pieces.append((lo, hi, definer, value))
        for lo, hi, definer, value in pieces:
            tri = ApexedTriangle(pv, _edge_point(pa, pb, lo), _edge_point(pa, pb, hi), definer, value, v)
            if tri.area <= 1e-14 * P.scale() ** 2:
                dropped += 1
                continue
            out.append(tri)
    if stats is not None:
        stats.dropped += dropped
    if dropped:
        logger.debug(f"沙漏 {h.edge}: 丢弃 {dropped} 个退化三角形")
    return out
