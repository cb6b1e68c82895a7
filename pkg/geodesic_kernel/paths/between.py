"""
墙路径计算

给定两棵以顶点 x、y 为根的最短路径树，若 x, u, y, v 沿边界依次排列，
则 π(u, v) 除至多一条边外都属于 T_x ∪ T_y。这里分两种情形重建路径：
  情形 1：π(u, v) 与 π(x, y) 共享一段子路径，拼接点由 LCA 给出；
  情形 2：两条反射链之间恰有一条切边，在两对候选链上交替推进搜索。
候选路径一律用局部拉紧性复核，全部失败时退回 geodesic_path 并记录告警。
"""
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Set, Tuple

from ..errors import OrderViolation
from ..geometry import Polygon, locate_on_boundary
from ..geometry.polygon import segment_inside
from ..geometry.predicates import on_segment
from .spt import GeodesicPath, ShortestPathTree, geodesic_path, is_taut

logger = logging.getLogger(__name__)


@dataclass
class WallStats:
    """墙路径统计：调用次数、回退次数、树外边数的最大值"""
    calls: int = 0
    fallbacks: int = 0
    max_foreign_edges: int = 0
    case_one: int = 0
    case_two: int = 0

    def merge(self, other: "WallStats") -> None:
        self.calls += other.calls
        self.fallbacks += other.fallbacks
        self.max_foreign_edges = max(self.max_foreign_edges, other.max_foreign_edges)
        self.case_one += other.case_one
        self.case_two += other.case_two


def tree_edges(T: ShortestPathTree) -> Set[Tuple[int, int]]:
    return {(min(v, int(p)), max(v, int(p))) for v, p in enumerate(T.parent) if p >= 0}


def foreign_edges(ids: Sequence[int], T_x: ShortestPathTree, T_y: ShortestPathTree) -> int:
    """路径中不属于 T_x ∪ T_y 的边数"""
    known = tree_edges(T_x) | tree_edges(T_y)
    return sum(1 for a, b in zip(ids, ids[1:]) if (min(a, b), max(a, b)) not in known)


def _scalar(T: ShortestPathTree) -> float:
    pos = locate_on_boundary(T.polygon, T.root)
    if pos is None:
        raise OrderViolation(f"树根 {tuple(T.root)} 不在边界上")
    return pos.scalar()


def _weak_cycle(n: int, seq: Sequence[float]) -> bool:
    ring = tuple(seq) + (seq[0],)
    total = sum((b - a) % n for a, b in zip(ring, ring[1:]))
    return abs(total - n) < 1e-9


def check_cyclic_order(P: Polygon, x: float, u: float, y: float, v: float) -> bool:
    """x, y 在边界上把 u, v 分隔开（环序 x, u, y, v，允许端点重合）"""
    if all(abs(a - x) < 1e-12 for a in (u, y, v)):
        return True
    return _weak_cycle(P.n, (x, u, y, v)) or _weak_cycle(P.n, (x, v, y, u))


def _locally_taut(P: Polygon, T_points, ids: List[int]) -> bool:
    for a, w, b in zip(ids, ids[1:], ids[2:]):
        if not is_taut(P, T_points[a], T_points[w], T_points[b]):
            return False
    return True


def _dedupe(ids: List[int]) -> List[int]:
    out: List[int] = []
    for k in ids:
        if not out or out[-1] != k:
            out.append(k)
    return out


def _split_at_touched(P: Polygon, pts, ids: List[int]) -> List[int]:
    """切边经过的顶点插入路径，与最短路径树的共线约定保持一致"""
    out = [ids[0]]
    for a, b in zip(ids, ids[1:]):
        pa, pb = pts[a], pts[b]
        dx, dy = pb[0] - pa[0], pb[1] - pa[1]
        touched = [
            k for k in range(P.n)
            if k not in (a, b) and on_segment(pa, pb, P[k])
        ]
        touched.sort(key=lambda k: (P[k][0] - pa[0]) * dx + (P[k][1] - pa[1]) * dy)
        out.extend(touched)
        out.append(b)
    return out


def _case_one(P: Polygon, u: int, v: int, T_x: ShortestPathTree, T_y: ShortestPathTree) -> Optional[List[int]]:
    """π(u, v) 沿 π(x, y) 走一段：u ⇝ y* ⇝(沿 π(x,y))⇝ x* ⇝ v"""
    spine = T_x.path_to_root(T_y.root_id)[::-1]  # x → y
    index = {k: i for i, k in enumerate(spine)}
    pairings = (
        (T_y, T_y.lca(u, T_x.root_id), T_x, T_x.lca(v, T_y.root_id)),
        (T_x, T_x.lca(u, T_y.root_id), T_y, T_y.lca(v, T_x.root_id)),
    )
    for T_u, join_u, T_v, join_v in pairings:
        if join_u not in index or join_v not in index:
            continue
        i, j = index[join_u], index[join_v]
        middle = spine[i:j + 1] if i <= j else spine[j:i + 1][::-1]
        ids = _dedupe(T_u.path_up(u, join_u) + middle + T_v.path_up(v, join_v)[::-1])
        if len(set(ids)) != len(ids):
            continue
        if _locally_taut(P, T_x.points, ids):
            return ids
    return None


def _divergence(T_x: ShortestPathTree, T_y: ShortestPathTree, w: int) -> Tuple[List[int], List[int], List[int]]:
    """w 到 x、w 到 y 两条树路径在公共前缀之后的部分（以分叉点开头）"""
    px, py = T_x.path_to_root(w), T_y.path_to_root(w)
    k = 0
    while k + 1 < len(px) and k + 1 < len(py) and px[k + 1] == py[k + 1]:
        k += 1
    return px[: k + 1], px[k:], py[k:]


def _lockstep(pairs: Sequence[Tuple[List[int], List[int]]]) -> Iterator[Tuple[int, int, int]]:
    """按 i+j 递增、两对候选链交替给出 (链对编号, i, j)"""
    limit = max(len(a) + len(b) for a, b in pairs)
    for total in range(limit):
        for which, (a, b) in enumerate(pairs):
            for i in range(max(0, total - len(b) + 1), min(total, len(a) - 1) + 1):
                yield which, i, total - i


def _case_two(P: Polygon, u: int, v: int, T_x: ShortestPathTree, T_y: ShortestPathTree) -> Optional[List[int]]:
    """两条反射链之间找唯一切边"""
    pts = T_x.points
    u_common, u_to_x, u_to_y = _divergence(T_x, T_y, u)
    v_common, v_to_x, v_to_y = _divergence(T_x, T_y, v)
    # 链从分叉点出发，头部接上公共前缀
    pairs = ((u_to_x, v_to_y), (u_to_y, v_to_x))
    for which, i, j in _lockstep(pairs):
        chain_u, chain_v = pairs[which]
        a, b = chain_u[i], chain_v[j]
        left = u_common[:-1] + chain_u[: i + 1]
        right = v_common[:-1] + chain_v[: j + 1]
        ids = _dedupe(left + right[::-1])
        if len(set(ids)) != len(ids):
            continue
        if not segment_inside(P, pts[a], pts[b]):
            continue
        if _locally_taut(P, pts, ids):
            return _split_at_touched(P, pts, ids)
    return None


def path_between(
    u: int,
    v: int,
    T_x: ShortestPathTree,
    T_y: ShortestPathTree,
    stats: Optional[WallStats] = None,
) -> GeodesicPath:
    """
    利用两棵最短路径树计算 π(u, v)

    Args:
        u, v: 顶点编号
        T_x, T_y: 以顶点 x、y 为根的最短路径树，要求边界环序 x, u, y, v
        stats: 调用方持有的计数器；不共享，多线程时每个任务各用一个

    Returns:
        GeodesicPath，nodes 为顶点编号序列
    """
    P = T_x.polygon
    if T_x.root_id >= P.n or T_y.root_id >= P.n:
        raise OrderViolation("墙路径的两棵树必须以多边形顶点为根")
    sx, sy = _scalar(T_x), _scalar(T_y)
    if not check_cyclic_order(P, sx, float(u), sy, float(v)):
        raise OrderViolation(f"环序 x, u, y, v 不成立: x={sx}, u={u}, y={sy}, v={v}")
    stats = WallStats() if stats is None else stats
    stats.calls += 1
    pts = T_x.points
    if u == v:
        return GeodesicPath.from_points([pts[u]], [u])
    ids: Optional[List[int]] = None
    for T in (T_x, T_y):
        if u == T.root_id:
            ids = T.path_to_root(v)[::-1]
        elif v == T.root_id:
            ids = T.path_to_root(u)
        if ids is not None:
            break
    if ids is None:
        ids = _case_one(P, u, v, T_x, T_y)
        if ids is not None:
            stats.case_one += 1
    if ids is None:
        ids = _case_two(P, u, v, T_x, T_y)
        if ids is not None:
            stats.case_two += 1
    if ids is None:
        stats.fallbacks += 1
        logger.warning(f"墙路径 {u}→{v} 未通过拉紧性复核，回退到 geodesic_path")
        path = geodesic_path(P, pts[u], pts[v])
        nodes = [next(k for k in range(P.n) if P[k] == p) for p in path.points]
        return GeodesicPath(path.points, path.length, tuple(nodes))
    stats.max_foreign_edges = max(stats.max_foreign_edges, foreign_edges(ids, T_x, T_y))
    return GeodesicPath.from_points([pts[k] for k in ids], ids)
