"""
耳切三角剖分

O(n²) 最坏复杂度，谓词全部精确，固定输入得到固定输出。
"""
import logging
from dataclasses import dataclass
from typing import List, Tuple

from .polygon import Polygon
from .predicates import orient

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Diagonalization:
    """
    三角剖分结果

    属性:
        diagonals: 对角线（顶点下标对，小下标在前）
        triangles: 逆时针三角形（顶点下标三元组）
    """
    diagonals: Tuple[Tuple[int, int], ...]
    triangles: Tuple[Tuple[int, int, int], ...]


def _is_ear(P: Polygon, ring: List[int], k: int, reflex: set) -> bool:
    a, b, c = ring[k - 1], ring[k], ring[(k + 1) % len(ring)]
    pa, pb, pc = P[a], P[b], P[c]
    if orient(pa, pb, pc) <= 0:
        return False
    for v in reflex:
        if v in (a, b, c):
            continue
        pv = P[v]
        # 闭三角形：落在对角线上的顶点同样阻断
        if orient(pa, pb, pv) >= 0 and orient(pb, pc, pv) >= 0 and orient(pc, pa, pv) >= 0:
            return False
    return True


def triangulate(P: Polygon) -> Diagonalization:
    """耳切法三角剖分，返回 n−3 条对角线与 n−2 个三角形"""
    ring = list(range(P.n))
    reflex = {i for i in ring if P.is_reflex(i)}
    triangles: List[Tuple[int, int, int]] = []
    diagonals: List[Tuple[int, int]] = []
    k = 0
    stall = 0
    while len(ring) > 3:
        k %= len(ring)
        if _is_ear(P, ring, k, reflex):
            a, b, c = ring[k - 1], ring[k], ring[(k + 1) % len(ring)]
            triangles.append((a, b, c))
            diagonals.append((min(a, c), max(a, c)))
            ring.pop(k)
            # 两个邻点的凹凸性可能改变
            for v in (a, c):
                if v in reflex:
                    j = ring.index(v)
                    if orient(P[ring[j - 1]], P[v], P[ring[(j + 1) % len(ring)]]) > 0:
                        reflex.discard(v)
            k = max(k - 1, 0)
            stall = 0
        else:
            k += 1
            stall += 1
            if stall > len(ring):
                raise RuntimeError("耳切失败：找不到耳，多边形可能未通过校验")
    triangles.append((ring[0], ring[1], ring[2]))
    logger.debug(f"三角剖分完成: {len(triangles)} 个三角形")
    return Diagonalization(tuple(diagonals), tuple(triangles))
