"""
测地中心与测地直径
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from ..config import EPS_D, SearchSettings, audit_enabled
from ..cover import Cover, TriangleArrays, build_cover, envelope
from ..errors import CertificateFailure
from ..geometry import Point, Polygon
from ..structure import TreeBank
from .cells import Center
from .descent import LocalCones, descent_rate
from .prune_search import SearchTrace, search
from .solver import solve_in_region

logger = logging.getLogger(__name__)

CERTIFICATE_LIMIT = 1e-6


@dataclass
class CenterResult:
    """
    测地中心

    属性:
        point: 中心
        radius: F_P(中心)
        certificate: 中心处的最陡可行下降速率（0 表示最优，超过 1e-6 时抛出 CertificateFailure）
        via: "oracle"（预言机在弦上命中）或 "region"（在最终单元内二分）
        trace: 剪枝过程
        cover: 使用的覆盖
    """
    point: Point
    radius: float
    certificate: float
    via: str
    trace: SearchTrace
    cover: Cover = field(repr=False)

    def to_dict(self) -> Dict[str, Any]:
        return {"center": [self.point[0], self.point[1]], "radius": self.radius}


@dataclass(frozen=True)
class DiameterResult:
    u: int
    v: int
    length: float

    def to_dict(self, P: Polygon) -> Dict[str, Any]:
        return {"u": self.u, "v": self.v, "points": [list(P[self.u]), list(P[self.v])], "length": self.length}


def optimality_certificate(arrays: TriangleArrays, x, tol: float = 1e-7, scale: float = 1.0) -> float:
    """
    x 处的最优性证书：最陡可行下降速率，0 表示 x 是最小点

    x 不在活动顶点上时就是活动单位梯度凸包的最小范数；x 恰为某个活动顶点时，
    顶点三角形的斜率只在它的楔形里算，逐方向比较。离 x 不超过 1e-8·scale 的三角形也算活动。
    """
    return descent_rate(LocalCones(arrays, x, scale, tol, 1e-8 * scale))


def geodesic_center(
    P: Polygon,
    settings: Optional[SearchSettings] = None,
    seed: int = 0,
    threads: int = 1,
    audit: Optional[bool] = None,
    cover: Optional[Cover] = None,
) -> CenterResult:
    """
    计算简单多边形的测地中心

    覆盖 → 剪枝搜索 → 最终单元内二分；半径取包络在中心处的值。

    Args:
        P: 多边形
        settings: 搜索参数
        seed: 随机种子
        threads: 并行线程数
        audit: 审计模式；None 时读 GEODESIC_CHECK
        cover: 已有的覆盖（例如从缓存加载）
    """
    settings = settings or SearchSettings()
    audit = audit_enabled() if audit is None else audit
    cover = cover or build_cover(P, threads=threads)
    outcome = search(P, cover, settings=settings, seed=seed, audit=audit, threads=threads)
    result = outcome.result
    if isinstance(result, Center):
        point, radius, via = result.point, result.radius, "oracle"
    else:
        triangles = [cover.triangles[i] for i in result.triangle_ids]
        point, radius = solve_in_region(P, result.cell, triangles, settings)
        via = "region"
    value, _ = envelope(cover.arrays, point, scale=P.scale())
    if math.isfinite(value):
        radius = value
    certificate = optimality_certificate(cover.arrays, point, scale=P.scale())
    if certificate > CERTIFICATE_LIMIT:
        logger.error(f"中心 {point} 的最优性证书为 {certificate:.3e}（{via}）")
        raise CertificateFailure(f"中心 {tuple(point)} 处仍有下降方向，速率 {certificate:.3e}")
    if outcome.trace.audit_failures:
        logger.error(f"审计失败 {outcome.trace.audit_failures} 次")
    logger.info(f"测地中心 {point}，半径 {radius:.9g}（{via}，剪枝 {len(outcome.trace.iterations)} 轮）")
    return CenterResult(point, radius, certificate, via, outcome.trace, cover)


def geodesic_diameter(P: Polygon, trees: Optional[TreeBank] = None, threads: int = 1) -> DiameterResult:
    """
    顶点间的最大测地距离

    距离差在 EPS_D 以内视为相等，取下标字典序最小的一对。
    """
    bank = trees or TreeBank(P)
    bank.prefetch(list(range(P.n)), threads=threads)
    D = bank.distance_matrix()
    best = float(D.max())
    hits = np.argwhere(D >= best - EPS_D)
    u, v = sorted((int(hits[0][0]), int(hits[0][1])))
    return DiameterResult(u, v, float(D[u, v]))
