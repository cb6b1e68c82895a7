"""
分离路径

为每条过渡边找一条端点在边界上的测地路径，使其端点在边界上与沙漏的上链、下链交替出现；
同一条路径的两端树可以被多个沙漏共用。
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from ..geometry import Polygon
from ..paths import GeodesicPath
from .farthest import BoundaryDecomposition, FarthestMap

logger = logging.getLogger(__name__)

MAX_PATHS = 8


@dataclass
class SeparatingPathSet:
    """
    分离路径集合

    属性:
        endpoints: 每条路径的两个端点（顶点下标）
        paths: 对应的测地路径
        assignment: 过渡边 → 路径编号，None 表示需要专用树
    """
    endpoints: List[Tuple[int, int]] = field(default_factory=list)
    paths: List[GeodesicPath] = field(default_factory=list)
    assignment: Dict[Tuple[int, int], Optional[int]] = field(default_factory=dict)

    @property
    def flagged(self) -> List[Tuple[int, int]]:
        return [e for e, k in self.assignment.items() if k is None]


def _in_arc(P: Polygon, s: int, e: int, x: int) -> bool:
    """x 是否在逆时针闭弧 [s..e] 上"""
    return P.ccw_gap(s, x) <= P.ccw_gap(s, e)


def separates(P: Polygon, edge: Tuple[int, int], fm: FarthestMap, p: int, q: int) -> bool:
    """端点 p, q 是否一个落在弧 [b..f(a)]、另一个落在弧 [f(b)..a]"""
    a, b = edge
    fa, fb = fm.f[a], fm.f[b]
    for x, y in ((p, q), (q, p)):
        if _in_arc(P, b, fa, x) and _in_arc(P, fb, a, y):
            return True
    return False


def separating_paths(P: Polygon, bd: BoundaryDecomposition, fm: FarthestMap) -> SeparatingPathSet:
    """
    构造分离路径集合

    先取最远距离最大的顶点 s 与 f(s)，再加上两段边界弧的中点，两两相连；
    仍未被分离的过渡边逐条补上 π(a, f(a))，总数超过上限后剩下的标记为回退。
    """
    n = P.n
    s = int(fm.dist.argmax())
    t = fm.f[s]
    gap = P.ccw_gap(s, t)
    mid_1 = (s + gap // 2) % n
    mid_2 = (t + (n - gap) // 2) % n
    seeds = list(dict.fromkeys([s, t, mid_1, mid_2]))
    pairs = [(p, q) for p, q in combinations(seeds, 2) if p != q]

    result = SeparatingPathSet()

    def add(p: int, q: int) -> int:
        result.endpoints.append((p, q))
        result.paths.append(fm.trees.get(p).path_from_root(q))
        return len(result.endpoints) - 1

    for p, q in pairs:
        add(p, q)
    for edge in bd.transition_edges:
        result.assignment[edge] = next(
            (k for k, (p, q) in enumerate(result.endpoints) if separates(P, edge, fm, p, q)), None
        )
    for edge in bd.transition_edges:
        if result.assignment[edge] is not None or len(result.endpoints) >= MAX_PATHS:
            continue
        k = add(edge[0], fm.f[edge[0]])
        for other in bd.transition_edges:
            if result.assignment[other] is None and separates(P, other, fm, edge[0], fm.f[edge[0]]):
                result.assignment[other] = k
    flagged = result.flagged
    if flagged:
        logger.warning(f"{len(flagged)} 条过渡边没有分离路径，改用专用树")
    logger.info(f"分离路径 {len(result.paths)} 条，覆盖过渡边 {len(bd.transition_edges) - len(flagged)} 条")
    return result
