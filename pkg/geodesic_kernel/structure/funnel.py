"""
标记顶点的漏斗

标记顶点 v 的链为逆时针区间 [s..e]，主链 C_v 取顺时针 (e+1, e, ..., s, s-1)，
两端都是过渡边；两面墙直接取自两侧沙漏的墙。
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from ..errors import MissingHourglass
from ..geometry import Point, Polygon, signed_area
from ..paths import GeodesicPath
from .farthest import BoundaryDecomposition
from .hourglass import Hourglass

logger = logging.getLogger(__name__)


@dataclass
class Funnel:
    """
    漏斗 F(v, C_v)

    属性:
        apex: 标记顶点 v
        main_chain: 主链 (u_0, ..., u_k)，沿边界顺时针
        wall_1: π(v, u_0)
        wall_2: π(u_k, v)
    """
    apex: int
    main_chain: Tuple[int, ...]
    wall_1: GeodesicPath
    wall_2: GeodesicPath
    polygon: Polygon = field(repr=False)

    def chain_edges(self) -> List[Tuple[int, int]]:
        return list(zip(self.main_chain, self.main_chain[1:]))


def build_funnel(
    P: Polygon,
    v: int,
    bd: BoundaryDecomposition,
    hourglasses: Dict[Tuple[int, int], Hourglass],
) -> Funnel:
    """
    构建标记顶点 v 的漏斗

    Raises:
        MissingHourglass: 两侧过渡边的沙漏缺失
    """
    s, e = bd.chains[v]
    u0, uk = P.next(e), P.prev(s)
    chain = tuple(reversed([uk] + P.ccw_range(s, e) + [u0]))
    right = hourglasses.get((e, u0))
    left = hourglasses.get((uk, s))
    if right is None or left is None:
        missing = (e, u0) if right is None else (uk, s)
        raise MissingHourglass(f"标记顶点 {v} 缺少过渡边 {missing} 的沙漏")
    # 沙漏 (e, e+1) 的墙 2 为 π(v, e+1)；沙漏 (s-1, s) 的墙 1 为 π(s-1, v)
    wall_1, wall_2 = right.wall_2, left.wall_1
    logger.debug(f"漏斗 v={v}: 主链 {len(chain)} 个顶点")
    return Funnel(v, chain, wall_1, wall_2, P)


def funnel_ring(fn: Funnel) -> List[Point]:
    """漏斗边界：墙 1 从 v 到 u_0，主链到 u_k，墙 2 回到 v"""
    P = fn.polygon
    ring: List[Point] = list(fn.wall_1.points)
    for k in fn.main_chain[1:]:
        ring.append(P[k])
    ring.extend(fn.wall_2.points[1:-1])
    return ring


def funnel_area(fn: Funnel) -> float:
    """漏斗面积；两面墙共享的前缀在鞋带公式里互相抵消"""
    return abs(signed_area(funnel_ring(fn)))
