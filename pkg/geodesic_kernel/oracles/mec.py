"""
最小外接圆

增量随机算法：逐点加入，点不在当前圆内时以它为边界重建。凸多边形的测地中心
就是顶点集的最小外接圆圆心，用来校验中心计算。
"""
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..geometry import Point

_REL_TOL = 1e-14


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def contains(self, p: Sequence[float]) -> bool:
        return math.hypot(p[0] - self.center[0], p[1] - self.center[1]) <= self.radius * (1.0 + _REL_TOL) + 1e-300


def _diameter(a: Sequence[float], b: Sequence[float]) -> Circle:
    cx, cy = (a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0
    r = max(math.hypot(cx - a[0], cy - a[1]), math.hypot(cx - b[0], cy - b[1]))
    return Circle(Point(cx, cy), r)


def _circumcircle(a: Sequence[float], b: Sequence[float], c: Sequence[float]) -> Optional[Circle]:
    # 平移到包围盒中心以减小舍入误差
    ox = (min(a[0], b[0], c[0]) + max(a[0], b[0], c[0])) / 2.0
    oy = (min(a[1], b[1], c[1]) + max(a[1], b[1], c[1])) / 2.0
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0
    if d == 0.0:
        return None
    x = ox + ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    y = oy + ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    r = max(math.hypot(x - p[0], y - p[1]) for p in (a, b, c))
    return Circle(Point(x, y), r)


def _cross(p: Sequence[float], q: Sequence[float], r: Sequence[float]) -> float:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _with_two(points: List[Tuple[float, float]], p, q) -> Circle:
    circ = _diameter(p, q)
    left: Optional[Circle] = None
    right: Optional[Circle] = None
    for r in points:
        if circ.contains(r):
            continue
        side = _cross(p, q, r)
        c = _circumcircle(p, q, r)
        if c is None:
            continue
        if side > 0.0 and (left is None or _cross(p, q, c.center) > _cross(p, q, left.center)):
            left = c
        elif side < 0.0 and (right is None or _cross(p, q, c.center) < _cross(p, q, right.center)):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right
    if right is None:
        return left
    return left if left.radius <= right.radius else right


def _with_one(points: List[Tuple[float, float]], p) -> Circle:
    c = Circle(Point(p[0], p[1]), 0.0)
    for i, q in enumerate(points):
        if not c.contains(q):
            c = _diameter(p, q) if c.radius == 0.0 else _with_two(points[: i + 1], p, q)
    return c


def minimum_enclosing_circle(points: Sequence[Sequence[float]], seed: int = 0) -> Circle:
    """
    点集的最小外接圆

    Args:
        points: 至少一个点
        seed: 打乱顺序用的随机种子

    Returns:
        Circle
    """
    if len(points) == 0:
        raise ValueError("点集为空")
    order = np.random.default_rng(seed).permutation(len(points))
    shuffled = [(float(points[k][0]), float(points[k][1])) for k in order]
    c: Optional[Circle] = None
    for i, p in enumerate(shuffled):
        if c is None or not c.contains(p):
            c = _with_one(shuffled[: i + 1], p)
    assert c is not None
    return c
