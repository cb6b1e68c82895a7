"""
带顶点三角形

三角形 (a, b, c)：a 为多边形顶点，b、c 在边界上；定义点 w 与常数 kappa = d(a, w)。
在闭三角形上 g(x) = |x - a| + kappa，三角形外为 -inf。
"""
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence

import numpy as np

from ..geometry import Point, orient
from ..geometry.predicates import cross

NEG_INF = float("-inf")


@dataclass(frozen=True)
class ApexedTriangle:
    """
    带顶点三角形

    属性:
        apex: 顶点 a
        b, c: 底边两端（在边界上）
        definer: 定义点 w 的顶点下标
        kappa: d(a, w)
        apex_id: a 的顶点下标
    """
    apex: Point
    b: Point
    c: Point
    definer: int
    kappa: float
    apex_id: int = -1

    @property
    def corners(self) -> tuple:
        return (self.apex, self.b, self.c)

    @property
    def area(self) -> float:
        return 0.5 * abs(cross(self.apex, self.b, self.c))

    def centroid(self) -> Point:
        return Point(
            (self.apex[0] + self.b[0] + self.c[0]) / 3.0,
            (self.apex[1] + self.b[1] + self.c[1]) / 3.0,
        )

    def contains(self, x: Sequence[float]) -> bool:
        """闭三角形精确包含"""
        a, b, c = self.corners
        s = orient(a, b, c)
        if s == 0:
            return False
        return orient(a, b, x) * s >= 0 and orient(b, c, x) * s >= 0 and orient(c, a, x) * s >= 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "apex": list(self.apex),
            "b": list(self.b),
            "c": list(self.c),
            "definer": self.definer,
            "kappa": self.kappa,
            "apex_id": self.apex_id,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ApexedTriangle":
        return cls(
            Point(*data["apex"]), Point(*data["b"]), Point(*data["c"]),
            int(data["definer"]), float(data["kappa"]), int(data.get("apex_id", -1)),
        )


def apex_value(t: ApexedTriangle, x: Sequence[float]) -> float:
    """g(x)；x 不在闭三角形内时为 -inf"""
    if not t.contains(x):
        return NEG_INF
    return math.hypot(x[0] - t.apex[0], x[1] - t.apex[1]) + t.kappa


@dataclass
class PieceStats:
    """切分计数：射线断点、链端断点、丢弃的退化三角形"""
    ray_breaks: int = 0
    chain_breaks: int = 0
    dropped: int = 0


@dataclass
class VertexLabels:
    """
    沙漏顶点的标号

    属性:
        c: c(v)，v 到其子树中不可见顶点的最大距离
        d_l: 经类型 2 孩子向下的最大距离
        d_r: 经类型 3 孩子向下的最大距离
        visible: v 是否能被过渡边看到
        child_type: (v, 孩子) → 类型 1/2/3
    """
    c: Dict[int, float] = field(default_factory=dict)
    d_l: Dict[int, float] = field(default_factory=dict)
    d_r: Dict[int, float] = field(default_factory=dict)
    visible: Dict[int, bool] = field(default_factory=dict)
    child_type: Dict[tuple, int] = field(default_factory=dict)


class TriangleArrays:
    """三角形集合的 numpy 视图，用于批量包含判定"""

    def __init__(self, triangles: List[ApexedTriangle]):
        self.triangles = triangles
        m = len(triangles)
        self.apex = np.array([t.apex for t in triangles], dtype=float).reshape(m, 2)
        self.b = np.array([t.b for t in triangles], dtype=float).reshape(m, 2)
        self.c = np.array([t.c for t in triangles], dtype=float).reshape(m, 2)
        self.kappa = np.array([t.kappa for t in triangles], dtype=float)
        sign = np.sign(_cross(self.apex, self.b, self.c))
        self.sign = np.where(sign == 0, 1.0, sign)

    def __len__(self) -> int:
        return len(self.triangles)

    def member_mask(self, x: Sequence[float], tol: float) -> np.ndarray:
        """闭包含（带容差）的布尔掩码"""
        p = np.asarray(x, dtype=float)[None, :]
        d1 = _cross(self.apex, self.b, p) * self.sign
        d2 = _cross(self.b, self.c, p) * self.sign
        d3 = _cross(self.c, self.apex, p) * self.sign
        return (d1 >= -tol) & (d2 >= -tol) & (d3 >= -tol)

    def values(self, x: Sequence[float]) -> np.ndarray:
        p = np.asarray(x, dtype=float)
        return np.hypot(p[0] - self.apex[:, 0], p[1] - self.apex[:, 1]) + self.kappa


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a[:, 0] - o[:, 0]) * (b[:, 1] - o[:, 1]) - (a[:, 1] - o[:, 1]) * (b[:, 0] - o[:, 0])
