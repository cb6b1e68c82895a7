"""
精确几何谓词

方向判定先用浮点行列式加前向误差界，误差界跨过 0 时退回到有理数精确计算。
所有组合判定（转向、可见性、简单性）都走这里，距离只做近似计算。
"""
import enum
import sys
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

Number = Union[float, int, Fraction]

_MACHINE_EPS = sys.float_info.epsilon * 0.5
# Shewchuk 的 A 级误差界
_CCW_ERRBOUND_A = (3.0 + 16.0 * _MACHINE_EPS) * _MACHINE_EPS


class Point(NamedTuple):
    """平面点（不可变）"""
    x: float
    y: float


class Orientation(enum.IntEnum):
    RIGHT = -1
    COLLINEAR = 0
    LEFT = 1


def _exact_sign(p: Sequence[Number], q: Sequence[Number], r: Sequence[Number]) -> int:
    px, py = Fraction(p[0]), Fraction(p[1])
    det = (Fraction(q[0]) - px) * (Fraction(r[1]) - py) - (Fraction(q[1]) - py) * (Fraction(r[0]) - px)
    return (det > 0) - (det < 0)


def orient(p: Sequence[Number], q: Sequence[Number], r: Sequence[Number]) -> int:
    """(q−p)×(r−p) 的精确符号：1 左转，-1 右转，0 共线"""
    if isinstance(p[0], Fraction) or isinstance(q[0], Fraction) or isinstance(r[0], Fraction):
        return _exact_sign(p, q, r)
    detleft = (q[0] - p[0]) * (r[1] - p[1])
    detright = (q[1] - p[1]) * (r[0] - p[0])
    det = detleft - detright
    detsum = abs(detleft) + abs(detright)
    # 坐标差本身有舍入，误差界再放大一档
    errbound = 4.0 * _CCW_ERRBOUND_A * detsum
    if det > errbound:
        return 1
    if -det > errbound:
        return -1
    return _exact_sign(p, q, r)


def orientation(p: Sequence[Number], q: Sequence[Number], r: Sequence[Number]) -> Orientation:
    """方向枚举版本"""
    return Orientation(orient(p, q, r))


def cross(o: Sequence[float], a: Sequence[float], b: Sequence[float]) -> float:
    """浮点叉积，只用于数值计算"""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _between(a: Number, b: Number, c: Number) -> bool:
    return min(a, b) <= c <= max(a, b)


def on_segment(p: Sequence[Number], q: Sequence[Number], r: Sequence[Number]) -> bool:
    """r 是否落在闭线段 pq 上"""
    if orient(p, q, r) != 0:
        return False
    return _between(p[0], q[0], r[0]) and _between(p[1], q[1], r[1])


def segments_cross(p1, p2, q1, q2) -> bool:
    """两线段是否真相交（交点在两者内部，且不共线）"""
    d1 = orient(p1, p2, q1)
    d2 = orient(p1, p2, q2)
    d3 = orient(q1, q2, p1)
    d4 = orient(q1, q2, p2)
    return d1 * d2 < 0 and d3 * d4 < 0


def segments_intersect(p1, p2, q1, q2) -> bool:
    """两闭线段是否有公共点"""
    d1 = orient(p1, p2, q1)
    d2 = orient(p1, p2, q2)
    d3 = orient(q1, q2, p1)
    d4 = orient(q1, q2, p2)
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    return (
        (d1 == 0 and on_segment(p1, p2, q1))
        or (d2 == 0 and on_segment(p1, p2, q2))
        or (d3 == 0 and on_segment(q1, q2, p1))
        or (d4 == 0 and on_segment(q1, q2, p2))
    )


def line_intersection_param(p, d, a, b):
    """
    直线 p + s·d 与直线 a→b 的交点，返回 (s, t)，t 为 a→b 上的参数

    平行时返回 None
    """
    ex, ey = b[0] - a[0], b[1] - a[1]
    denom = d[0] * ey - d[1] * ex
    if denom == 0.0:
        return None
    wx, wy = a[0] - p[0], a[1] - p[1]
    s = (wx * ey - wy * ex) / denom
    t = (wx * d[1] - wy * d[0]) / denom
    return s, t


def signed_area(points: Sequence[Sequence[float]]) -> float:
    """鞋带公式有向面积，逆时针为正"""
    total = 0.0
    n = len(points)
    for i in range(n):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total / 2.0
