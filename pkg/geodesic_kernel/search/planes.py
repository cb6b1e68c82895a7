"""
(x, r) 空间中的约束与分离平面

把 |x - a_i| + kappa_i <= r 两边平方得到
    h_i(x, r) = |x|² - 2x·a_i + |a_i|² - r² + 2r·kappa_i - kappa_i² <= 0   (r > kappa_i)
两个约束之差不含二次项，是一个平面 γ_ij(x, r) = h_i - h_j。
"""
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from ..config import EPS_D
from ..cover import NEG_INF, ApexedTriangle
from ..errors import IdenticalConstraints
from ..geometry import Point

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Constraint:
    """
    一个带顶点三角形对应的约束

    属性:
        apex: a_i
        kappa: kappa_i
        triangle: 定义域三角形；None 表示不限制定义域
        triangle_id: 三角形编号
    """
    apex: Point
    kappa: float
    triangle: Optional[ApexedTriangle] = None
    triangle_id: int = -1

    @classmethod
    def from_triangle(cls, t: ApexedTriangle, triangle_id: int = -1) -> "Constraint":
        return cls(t.apex, t.kappa, t, triangle_id)


@dataclass(frozen=True)
class SeparatingPlane:
    """alpha·r + beta·x + delta = 0"""
    alpha: float
    beta1: float
    beta2: float
    delta: float

    def evaluate(self, x: Sequence[float], r: float) -> float:
        return self.alpha * r + self.beta1 * x[0] + self.beta2 * x[1] + self.delta

    def side(self, x: Sequence[float], r: float, tol: float = 0.0) -> int:
        value = self.evaluate(x, r)
        if value > tol:
            return 1
        if value < -tol:
            return -1
        return 0


def constraint_value(c: Constraint, x: Sequence[float], r: float) -> float:
    """h_i(x, r)；x 不在定义域三角形内时为 -inf"""
    if c.triangle is not None and not c.triangle.contains(x):
        return NEG_INF
    ax, ay = c.apex
    return (
        x[0] * x[0] + x[1] * x[1]
        - 2.0 * (x[0] * ax + x[1] * ay)
        + ax * ax + ay * ay
        - r * r + 2.0 * r * c.kappa - c.kappa * c.kappa
    )


def separating_plane(ci: Constraint, cj: Constraint) -> SeparatingPlane:
    """γ_ij 的系数"""
    if ci.apex[0] == cj.apex[0] and ci.apex[1] == cj.apex[1] and ci.kappa == cj.kappa:
        raise IdenticalConstraints(f"约束 (a={tuple(ci.apex)}, kappa={ci.kappa}) 重复")
    (aix, aiy), (ajx, ajy) = ci.apex, cj.apex
    return SeparatingPlane(
        alpha=2.0 * (ci.kappa - cj.kappa),
        beta1=-2.0 * (aix - ajx),
        beta2=-2.0 * (aiy - ajy),
        delta=(aix * aix + aiy * aiy) - (ajx * ajx + ajy * ajy) - ci.kappa * ci.kappa + cj.kappa * cj.kappa,
    )


def feasible(constraints: Sequence[Constraint], x: Sequence[float], r: float, tol: float = EPS_D) -> bool:
    """
    (x, r) 是否满足平方后的约束组

    要求 r 大于所有在 x 处有定义的 kappa_i，且这些 h_i 都不超过 tol（按 r 的尺度放大）。
    """
    live = [c for c in constraints if c.triangle is None or c.triangle.contains(x)]
    if not live:
        return False
    if r <= max(c.kappa for c in live):
        return False
    slack = tol * max(1.0, r)
    return all(constraint_value(c, x, r) <= slack for c in live)
