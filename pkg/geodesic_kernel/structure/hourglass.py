"""
过渡沙漏

过渡边 (a, b) 的沙漏由上链 ab、下链 ∂P(f(a), f(b)) 与两面墙 π(a, f(b))、π(f(a), b) 围成。
墙通过 path_between 在分离路径端点的两棵树上求出。
"""
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from ..errors import DegenerateFarthestStructure, NotOpen
from ..geometry import Point, Polygon
from ..paths import GeodesicPath, ShortestPathTree, WallStats, path_between
from .farthest import BoundaryDecomposition, FarthestMap
from .separators import SeparatingPathSet, separating_paths

logger = logging.getLogger(__name__)


@dataclass
class Hourglass:
    """
    沙漏

    属性:
        edge: 过渡边 (a, b)，a→b 为逆时针方向
        top_chain: 上链的逆时针下标区间
        bottom_chain: 下链的逆时针下标区间 (f(a), f(b))
        wall_1: π(a, f(b))
        wall_2: π(f(a), b)
    """
    edge: Tuple[int, int]
    top_chain: Tuple[int, int]
    bottom_chain: Tuple[int, int]
    wall_1: GeodesicPath
    wall_2: GeodesicPath
    polygon: Polygon = field(repr=False)

    def wall_ids(self, which: int) -> List[int]:
        wall = self.wall_1 if which == 1 else self.wall_2
        return list(wall.nodes or ())

    def bottom_vertices(self) -> List[int]:
        return self.polygon.ccw_range(*self.bottom_chain)

    def vertices(self) -> Set[int]:
        """沙漏包含的全部多边形顶点"""
        out = set(self.polygon.ccw_range(*self.top_chain))
        out.update(self.bottom_vertices())
        out.update(self.wall_ids(1))
        out.update(self.wall_ids(2))
        return out

    def chords(self) -> List[Tuple[int, int]]:
        """两面墙上不是多边形边的线段"""
        n = self.polygon.n
        out = []
        for which in (1, 2):
            ids = self.wall_ids(which)
            for u, v in zip(ids, ids[1:]):
                if (v - u) % n not in (1, n - 1):
                    out.append((min(u, v), max(u, v)))
        return out


def is_open(h: Hourglass) -> bool:
    """两面墙顶点不相交"""
    return not set(h.wall_ids(1)) & set(h.wall_ids(2))


def hourglass_ring(h: Hourglass) -> List[Point]:
    """沙漏边界（逆时针）：a, b, 墙 2 回到 f(a)，下链到 f(b)，墙 1 回到 a"""
    P = h.polygon
    a, b = h.edge
    ring = [P[a], P[b]]
    ring.extend(reversed(h.wall_2.points[:-1]))
    ring = ring[:-1] if ring[-1] == ring[-2] else ring
    for k in h.bottom_vertices():
        if ring[-1] != P[k]:
            ring.append(P[k])
    for p in reversed(h.wall_1.points):
        if ring[-1] != p:
            ring.append(p)
    if ring[-1] == ring[0]:
        ring.pop()
    return ring


def hourglass_size(h: Hourglass) -> int:
    """|H|：两面墙的顶点数加上、下链长度"""
    P = h.polygon
    return (
        len(h.wall_ids(1)) + len(h.wall_ids(2))
        + P.ccw_gap(*h.top_chain) + P.ccw_gap(*h.bottom_chain) + 2
    )


def build_hourglass(
    P: Polygon,
    edge: Tuple[int, int],
    fm: FarthestMap,
    T_x: ShortestPathTree,
    T_y: ShortestPathTree,
    stats: Optional[WallStats] = None,
) -> Hourglass:
    """
    构建过渡边的沙漏

    Args:
        P: 多边形
        edge: 过渡边 (a, b)
        fm: 最远邻
        T_x, T_y: 分离路径两端的树（回退时为专用树）
        stats: 墙路径计数器

    Returns:
        开放的 Hourglass
    """
    a, b = edge
    fa, fb = fm.f[a], fm.f[b]
    wall_1 = path_between(a, fb, T_x, T_y, stats)
    wall_2 = path_between(fa, b, T_x, T_y, stats)
    h = Hourglass(edge, (a, b), (fa, fb), wall_1, wall_2, P)
    if not is_open(h):
        shared = set(h.wall_ids(1)) & set(h.wall_ids(2))
        logger.error(f"沙漏 {edge} 的两面墙共享顶点 {sorted(shared)}")
        raise NotOpen(f"过渡边 {edge} 的沙漏不是开放的")
    return h


@dataclass
class HourglassSet:
    """
    全部过渡沙漏及统计

    属性:
        hourglasses: 过渡边 → 沙漏，按边的下标排列
        separators: 使用的分离路径
        max_chord_multiplicity: 同一条墙弦出现在不同沙漏中的最大次数
        sum_size: Σ|H|
        wall_stats: 全部墙路径的计数汇总
    """
    hourglasses: Dict[Tuple[int, int], Hourglass]
    separators: SeparatingPathSet
    max_chord_multiplicity: int = 0
    sum_size: int = 0
    wall_stats: WallStats = field(default_factory=WallStats)

    def __iter__(self):
        return iter(self.hourglasses.values())

    def __len__(self) -> int:
        return len(self.hourglasses)


def bottom_chains_ordered(P: Polygon, hourglasses: Sequence[Hourglass]) -> bool:
    """
    按过渡边的逆时针顺序，下链也依次排列且边不相交

    下链长度与相邻下链之间的间隙加起来恰好绕边界一圈。
    """
    if not hourglasses:
        return True
    ranges = [h.bottom_chain for h in sorted(hourglasses, key=lambda h: h.edge[0])]
    total = sum(P.ccw_gap(s, e) for s, e in ranges)
    total += sum(P.ccw_gap(ranges[k][1], ranges[(k + 1) % len(ranges)][0]) for k in range(len(ranges)))
    return total == P.n


def build_all_hourglasses(
    P: Polygon,
    bd: BoundaryDecomposition,
    fm: FarthestMap,
    threads: int = 1,
    separators: Optional[SeparatingPathSet] = None,
) -> HourglassSet:
    """
    为每条过渡边构建沙漏；同一分离路径的两棵树只建一次

    Raises:
        NotOpen: 某个沙漏的两面墙相交
        DegenerateFarthestStructure: 墙弦重数超过 6，或下链环序与过渡边不一致
    """
    seps = separators or separating_paths(P, bd, fm)
    roots = {x for pair in seps.endpoints for x in pair}
    for a, _ in seps.flagged:
        roots.update((a, fm.f[a]))
    fm.trees.prefetch(sorted(roots), threads=threads)

    def one(edge: Tuple[int, int]) -> Tuple[Hourglass, WallStats]:
        stats = WallStats()
        k = seps.assignment.get(edge)
        if k is None:
            # 专用树：x = a, y = f(a)，两面墙都是树路径
            a = edge[0]
            return build_hourglass(P, edge, fm, fm.trees.get(a), fm.trees.get(fm.f[a]), stats), stats
        p, q = seps.endpoints[k]
        return build_hourglass(P, edge, fm, fm.trees.get(p), fm.trees.get(q), stats), stats

    edges = list(bd.transition_edges)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, edges))
    else:
        results = [one(e) for e in edges]
    built = [h for h, _ in results]
    hourglasses = dict(zip(edges, built))
    wall_stats = WallStats()
    for _, stats in results:
        wall_stats.merge(stats)

    multiplicity = Counter(c for h in built for c in set(h.chords()))
    max_mult = max(multiplicity.values(), default=0)
    if max_mult > 6:
        chord = max(multiplicity, key=multiplicity.get)
        logger.error(f"墙弦 {chord} 出现在 {max_mult} 个沙漏中")
        raise DegenerateFarthestStructure(f"墙弦最大重数 {max_mult} 超过 6")
    if not bottom_chains_ordered(P, built):
        logger.error(f"下链 {[h.bottom_chain for h in built]} 与过渡边 {edges} 的环序不一致")
        raise DegenerateFarthestStructure("下链的环序与过渡边不一致")
    total = sum(hourglass_size(h) for h in built)
    logger.info(f"沙漏 {len(built)} 个，Σ|H|={total}，墙弦最大重数 {max_mult}，墙路径回退 {wall_stats.fallbacks} 次")
    return HourglassSet(hourglasses, seps, max_mult, total, wall_stats)
