"""
最短路径树

在耳切三角剖分上运行漏斗算法，得到从任意根点出发的测地最短路径树。
节点编号：0..n-1 为多边形顶点；根不是顶点时编号为 n；附加目标点依次排在后面。
"""
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import PointOutside, RootOutside
from ..geometry import Point, Polygon, contains, orient, triangulate
from ..geometry.predicates import on_segment
from .lca import EulerLCA

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GeodesicPath:
    """
    测地路径

    属性:
        points: 路径上的点
        length: 各段长度之和
        nodes: 点对应的树节点 / 顶点编号（已知时）
    """
    points: Tuple[Point, ...]
    length: float
    nodes: Optional[Tuple[int, ...]] = None

    @classmethod
    def from_points(cls, points: Sequence[Sequence[float]], nodes: Optional[Sequence[int]] = None) -> "GeodesicPath":
        pts = tuple(Point(float(p[0]), float(p[1])) for p in points)
        length = sum(math.dist(a, b) for a, b in zip(pts, pts[1:]))
        return cls(pts, length, tuple(nodes) if nodes is not None else None)

    def reversed(self) -> "GeodesicPath":
        nodes = tuple(reversed(self.nodes)) if self.nodes is not None else None
        return GeodesicPath(tuple(reversed(self.points)), self.length, nodes)

    def vertex_ids(self, n: int) -> List[int]:
        """路径上的多边形顶点编号"""
        return [k for k in (self.nodes or ()) if 0 <= k < n]


@dataclass
class ShortestPathTree:
    """
    以 root 为根的最短路径树

    属性:
        polygon: 所属多边形
        root: 根点
        root_id: 根节点编号
        points: 全部节点坐标
        parent: 父节点（根为 -1）
        dist: 到根的测地距离
        depth: 树深度
        children: 孩子邻接表
    """
    polygon: Polygon
    root: Point
    root_id: int
    points: List[Point]
    parent: np.ndarray
    dist: np.ndarray
    depth: np.ndarray
    children: List[List[int]] = field(default_factory=list)
    _lca: Optional[EulerLCA] = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.points)

    def lca_index(self) -> EulerLCA:
        if self._lca is None:
            self._lca = EulerLCA(self.parent.tolist(), self.depth.tolist(), self.root_id)
        return self._lca

    def lca(self, u: int, v: int) -> int:
        return self.lca_index().lca(u, v)

    def path_to_root(self, v: int) -> List[int]:
        """v → 根的节点序列"""
        out = [v]
        while self.parent[out[-1]] >= 0:
            out.append(int(self.parent[out[-1]]))
        return out

    def path_up(self, v: int, ancestor: int) -> List[int]:
        """v → ancestor（含两端），ancestor 必须是 v 的祖先"""
        out = [v]
        while out[-1] != ancestor:
            p = int(self.parent[out[-1]])
            if p < 0:
                raise ValueError(f"{ancestor} 不是 {v} 的祖先")
            out.append(p)
        return out

    def is_ancestor(self, a: int, v: int) -> bool:
        return self.lca(a, v) == a

    def path_from_root(self, v: int) -> GeodesicPath:
        ids = self.path_to_root(v)[::-1]
        return GeodesicPath.from_points([self.points[k] for k in ids], ids)


def _adjacency(tris: Sequence[Tuple[int, int, int]]) -> Dict[Tuple[int, int], List[int]]:
    adj: Dict[Tuple[int, int], List[int]] = defaultdict(list)
    for t, (a, b, c) in enumerate(tris):
        for i, j in ((a, b), (b, c), (c, a)):
            adj[(min(i, j), max(i, j))].append(t)
    return adj


def _in_closed_triangle(pa, pb, pc, x) -> bool:
    return orient(pa, pb, x) >= 0 and orient(pb, pc, x) >= 0 and orient(pc, pa, x) >= 0


def _funnel_parent(pts: List[Point], funnel: List[int], apex: int, c: Sequence[float]) -> int:
    """在漏斗 [p_0..p_m]（顶点 c 位于 p_0→p_m 左侧）中找 c 的父节点所在下标"""
    for i in range(apex):
        if orient(pts[funnel[i]], pts[funnel[i + 1]], c) <= 0:
            return i
    for i in range(len(funnel) - 2, apex - 1, -1):
        if orient(pts[funnel[i]], pts[funnel[i + 1]], c) <= 0:
            return i + 1
    return apex


def build_spt(P: Polygon, root: Sequence[float], extra_points: Sequence[Sequence[float]] = ()) -> ShortestPathTree:
    """
    构建最短路径树

    Args:
        P: 多边形
        root: 根点（闭区域内）
        extra_points: 需要一并挂到树上的附加点

    Returns:
        ShortestPathTree
    """
    root = Point(float(root[0]), float(root[1]))
    if not contains(P, root):
        raise RootOutside(f"根 {tuple(root)} 不在多边形内")
    n = P.n
    pts: List[Point] = list(P.vertices)
    root_id = next((i for i, v in enumerate(P.vertices) if v == root), -1)
    if root_id < 0:
        root_id = len(pts)
        pts.append(root)
    extra_ids: List[int] = []
    for x in extra_points:
        x = Point(float(x[0]), float(x[1]))
        hit = next((i for i, v in enumerate(pts) if v == x), -1)
        if hit < 0:
            hit = len(pts)
            pts.append(x)
        extra_ids.append(hit)
    pending = {k for k in extra_ids if k >= n and k != root_id}

    N = len(pts)
    parent = np.full(N, -1, dtype=np.int64)
    dist = np.zeros(N, dtype=float)
    assigned = np.zeros(N, dtype=bool)
    assigned[root_id] = True

    tris = triangulate(P).triangles
    adj = _adjacency(tris)

    def attach(v: int, par: int) -> None:
        parent[v] = par
        dist[v] = dist[par] + math.dist(pts[v], pts[par])
        assigned[v] = True

    root_tris = [t for t, (a, b, c) in enumerate(tris) if _in_closed_triangle(P[a], P[b], P[c], root)]
    visited = set(root_tris)
    stack: List[Tuple[int, List[int], int]] = []
    for t in root_tris:
        a, b, c = tris[t]
        for v in (a, b, c):
            if not assigned[v]:
                attach(v, root_id)
        for k in list(pending):
            if _in_closed_triangle(P[a], P[b], P[c], pts[k]):
                attach(k, root_id)
                pending.discard(k)
        for i, j in ((a, b), (b, c), (c, a)):
            for other in adj[(min(i, j), max(i, j))]:
                if other not in visited:
                    stack.append((other, [j, root_id, i], 1))

    while stack:
        t, funnel, apex = stack.pop()
        if t in visited:
            continue
        visited.add(t)
        p0, pm = funnel[0], funnel[-1]
        c = next(v for v in tris[t] if v != p0 and v != pm)
        s = _funnel_parent(pts, funnel, apex, pts[c])
        if not assigned[c]:
            attach(c, funnel[s])
        for k in list(pending):
            if _in_closed_triangle(P[p0], P[pm], P[c], pts[k]):
                attach(k, funnel[_funnel_parent(pts, funnel, apex, pts[k])])
                pending.discard(k)
        if s <= apex:
            left, left_apex = funnel[:s + 1] + [c], s
            right, right_apex = [c] + funnel[s:], apex - s + 1
        else:
            left, left_apex = funnel[:s + 1] + [c], apex
            right, right_apex = [c] + funnel[s:], 1
        for (i, j), f, fa in (((c, p0), left, left_apex), ((pm, c), right, right_apex)):
            for other in adj[(min(i, j), max(i, j))]:
                if other not in visited:
                    stack.append((other, f, fa))

    depth = np.zeros(N, dtype=np.int64)
    order = np.argsort(dist, kind="stable")
    for v in order:
        if parent[v] >= 0:
            depth[v] = depth[parent[v]] + 1
    children: List[List[int]] = [[] for _ in range(N)]
    for v in range(N):
        if parent[v] >= 0:
            children[int(parent[v])].append(v)
    logger.debug(f"最短路径树构建完成: 根 {tuple(root)}，节点 {N}")
    return ShortestPathTree(P, root, root_id, pts, parent, dist, depth, children)


def geodesic_path(P: Polygon, x: Sequence[float], y: Sequence[float]) -> GeodesicPath:
    """x 到 y 的测地路径"""
    for p in (x, y):
        if not contains(P, p):
            raise PointOutside(f"点 {tuple(p)} 不在多边形内")
    T = build_spt(P, x, extra_points=[y])
    target = next(i for i, v in enumerate(T.points) if v == Point(float(y[0]), float(y[1])))
    return T.path_from_root(target)


def geodesic_distance(P: Polygon, x: Sequence[float], y: Sequence[float]) -> float:
    return geodesic_path(P, x, y).length


def is_taut(P: Polygon, prev: Sequence[float], w: Sequence[float], nxt: Sequence[float]) -> bool:
    """
    路径 prev→w→nxt 在 w 处是否拉紧

    直行视为拉紧；否则 w 必须是顶点，且其两条边界邻边都落在 wp 与 wq 夹成的闭小角内
    """
    turn = orient(prev, w, nxt)
    if turn == 0:
        return on_segment(prev, nxt, w)
    k = next((i for i, v in enumerate(P.vertices) if v[0] == w[0] and v[1] == w[1]), -1)
    if k < 0:
        return False
    sign = orient(w, prev, nxt)
    for z in (P[k - 1], P[k + 1]):
        if orient(w, prev, z) * sign < 0 or orient(w, z, nxt) * sign < 0:
            return False
    return True
