"""
最远邻与边界分解

每个顶点建一棵最短路径树取最远顶点（O(n²)），再把边界切成“同一最远邻”的连续链
与过渡边。树按根缓存，后续的沙漏与漏斗直接复用。
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..config import EPS_D, audit_enabled
from ..errors import DegenerateFarthestStructure
from ..geometry import Polygon
from ..paths import ShortestPathTree, build_spt

logger = logging.getLogger(__name__)


class TreeBank:
    """以顶点为根的最短路径树缓存"""

    def __init__(self, P: Polygon):
        self.polygon = P
        self._trees: Dict[int, ShortestPathTree] = {}

    def get(self, v: int) -> ShortestPathTree:
        v %= self.polygon.n
        tree = self._trees.get(v)
        if tree is None:
            tree = build_spt(self.polygon, self.polygon[v])
            self._trees[v] = tree
        return tree

    def prefetch(self, roots: List[int], threads: int = 1) -> None:
        missing = [v for v in roots if v not in self._trees]
        if not missing:
            return
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                trees = list(pool.map(lambda v: build_spt(self.polygon, self.polygon[v]), missing))
        else:
            trees = [build_spt(self.polygon, self.polygon[v]) for v in missing]
        # 按下标合并，结果与线程数无关
        for v, tree in zip(missing, trees):
            self._trees[v] = tree

    def __len__(self) -> int:
        return len(self._trees)

    def distance_matrix(self) -> np.ndarray:
        """顶点两两测地距离（会补建缺失的树）"""
        n = self.polygon.n
        self.prefetch(list(range(n)))
        return np.vstack([self._trees[v].dist[:n] for v in range(n)])


@dataclass
class FarthestMap:
    """
    顶点最远邻

    属性:
        f: f[v] 为 v 的最远顶点
        dist: v 到 f[v] 的测地距离
        trees: 计算过程中建好的树
    """
    f: List[int]
    dist: np.ndarray
    trees: TreeBank = field(repr=False)

    def __getitem__(self, v: int) -> int:
        return self.f[v]

    @property
    def n(self) -> int:
        return len(self.f)


def all_farthest_neighbors(
    P: Polygon,
    threads: int = 1,
    trees: Optional[TreeBank] = None,
    audit: Optional[bool] = None,
) -> FarthestMap:
    """
    计算每个顶点的测地最远顶点

    距离差在 EPS_D 以内视为相等，取下标最小者。

    Args:
        audit: 为 True 时最远邻落在反射顶点上直接失败；缺省读 GEODESIC_CHECK

    Raises:
        DegenerateFarthestStructure: 审计模式下某个最远邻不是凸顶点
    """
    audit = audit_enabled() if audit is None else audit
    bank = trees or TreeBank(P)
    bank.prefetch(list(range(P.n)), threads=threads)
    D = bank.distance_matrix()
    f: List[int] = []
    for v in range(P.n):
        row = D[v]
        best = float(row.max())
        f.append(int(np.flatnonzero(row >= best - EPS_D)[0]))
    fd = D[np.arange(P.n), f]
    for v, w in enumerate(f):
        if w == v or not P.is_convex(w):
            if audit:
                logger.error(f"顶点 {v} 的最远邻 {w} 不是凸顶点")
                raise DegenerateFarthestStructure(f"顶点 {v} 的最远邻 {w} 不是凸顶点")
            logger.warning(f"顶点 {v} 的最远邻 {w} 不是凸顶点")
    logger.info(f"最远邻计算完成: {P.n} 个顶点，标记顶点 {len(set(f))} 个")
    return FarthestMap(f, fd, bank)


@dataclass
class BoundaryDecomposition:
    """
    边界分解

    属性:
        marked: 标记顶点集合 M
        chains: 标记顶点 → 逆时针闭区间 (start, end)，区间内顶点的最远邻都是它
        transition_edges: 过渡边 (i, i+1)，按 i 递增
    """
    marked: List[int]
    chains: Dict[int, Tuple[int, int]]
    transition_edges: List[Tuple[int, int]]

    def chain_vertices(self, P: Polygon, v: int) -> List[int]:
        s, e = self.chains[v]
        return P.ccw_range(s, e)

    def chain_order(self) -> List[int]:
        """标记顶点按其链沿边界顺时针的次序"""
        return sorted(self.marked, key=lambda v: -self.chains[v][0])


def _circular_interval(n: int, members: List[int]) -> Optional[Tuple[int, int]]:
    inside = set(members)
    if len(inside) == n:
        return None
    starts = [v for v in members if (v - 1) % n not in inside]
    if len(starts) != 1:
        return None
    s = starts[0]
    return s, (s + len(members) - 1) % n


def decompose_boundary(P: Polygon, fm: FarthestMap) -> BoundaryDecomposition:
    """按最远邻把边界切成连续链与过渡边"""
    n = P.n
    groups: Dict[int, List[int]] = {}
    for v in range(n):
        groups.setdefault(fm.f[v], []).append(v)
    chains: Dict[int, Tuple[int, int]] = {}
    for w, members in groups.items():
        span = _circular_interval(n, members)
        if span is None:
            logger.error(f"标记顶点 {w} 的链不连续: {members}")
            raise DegenerateFarthestStructure(f"标记顶点 {w} 对应的顶点不构成连续区间")
        chains[w] = span
    edges = [(i, (i + 1) % n) for i in range(n) if fm.f[i] != fm.f[(i + 1) % n]]
    marked = sorted(chains)
    logger.info(f"边界分解: |M|={len(marked)}，过渡边 {len(edges)} 条")
    return BoundaryDecomposition(marked, chains, edges)
