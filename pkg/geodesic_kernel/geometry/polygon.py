"""
简单多边形表示

提供多边形校验、包含判定、射线求交、弦切分以及边界位置的规范化寻址。
多边形一律按逆时针存储。
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..errors import (
    ChordOnBoundary,
    CollinearRun,
    DegenerateRay,
    DuplicateVertex,
    NotSimple,
    TooFewVertices,
)
from .predicates import (
    Point,
    line_intersection_param,
    on_segment,
    orient,
    segments_cross,
    segments_intersect,
    signed_area,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Polygon:
    """
    逆时针顶点环

    属性:
        vertices: 顶点元组
        edges: 边 (i, i+1) 的端点对
    """
    vertices: Tuple[Point, ...]
    edges: Tuple[Tuple[Point, Point], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.vertices)
        object.__setattr__(
            self, "edges",
            tuple((self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)),
        )

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __len__(self) -> int:
        return len(self.vertices)

    def __getitem__(self, i: int) -> Point:
        return self.vertices[i % len(self.vertices)]

    def next(self, i: int) -> int:
        return (i + 1) % self.n

    def prev(self, i: int) -> int:
        return (i - 1) % self.n

    def is_reflex(self, i: int) -> bool:
        return orient(self[i - 1], self[i], self[i + 1]) < 0

    def is_convex(self, i: int) -> bool:
        return orient(self[i - 1], self[i], self[i + 1]) > 0

    @property
    def area(self) -> float:
        return signed_area(self.vertices)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float)

    def bbox(self) -> Tuple[float, float, float, float]:
        arr = self.as_array()
        return float(arr[:, 0].min()), float(arr[:, 1].min()), float(arr[:, 0].max()), float(arr[:, 1].max())

    def scale(self) -> float:
        x0, y0, x1, y1 = self.bbox()
        return max(x1 - x0, y1 - y0, 1e-300)

    def ccw_gap(self, i: int, j: int) -> int:
        """从 i 沿逆时针走到 j 的步数"""
        return (j - i) % self.n

    def ccw_range(self, i: int, j: int) -> List[int]:
        """逆时针闭区间 [i..j] 的顶点下标"""
        return [(i + k) % self.n for k in range(self.ccw_gap(i, j) + 1)]


@dataclass(frozen=True, order=True)
class BoundaryPos:
    """
    边界点的规范地址

    属性:
        edge_index: 所在边 [0, n)
        t: 边上的参数 [0, 1]
    """
    edge_index: int
    t: float

    def normalized(self, n: int) -> "BoundaryPos":
        if self.t >= 1.0 and self.edge_index < n - 1:
            return BoundaryPos(self.edge_index + 1, 0.0)
        return self

    def point(self, P: Polygon) -> Point:
        a, b = P.edges[self.edge_index]
        if self.t == 0.0:
            return a
        if self.t == 1.0:
            return b
        return Point(a[0] + self.t * (b[0] - a[0]), a[1] + self.t * (b[1] - a[1]))

    def scalar(self) -> float:
        """沿边界的标量坐标 edge_index + t"""
        return self.edge_index + self.t

    @property
    def vertex(self) -> Optional[int]:
        return self.edge_index if self.t == 0.0 else None


@dataclass(frozen=True)
class Chord:
    """
    两个边界点之间、内部严格位于多边形内的线段

    属性:
        a: 起点边界地址
        b: 终点边界地址
        segment: (起点, 终点)
    """
    a: BoundaryPos
    b: BoundaryPos
    segment: Tuple[Point, Point]

    def at(self, t: float) -> Point:
        p, q = self.segment
        return Point(p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))

    @property
    def direction(self) -> Tuple[float, float]:
        p, q = self.segment
        return (q[0] - p[0], q[1] - p[1])

    @property
    def length(self) -> float:
        return math.hypot(*self.direction)


def _simplicity_violation(points: Sequence[Point]) -> Optional[Tuple[int, int]]:
    """返回第一对相交的非相邻边；浮点预筛后用精确谓词确认"""
    n = len(points)
    arr = np.asarray(points, dtype=float)
    a = arr
    b = np.roll(arr, -1, axis=0)
    span = float(np.ptp(arr)) or 1.0
    slack = 1e-9 * span ** 4
    for i in range(n):
        p1, p2 = a[i], b[i]
        d1 = (p2[0] - p1[0]) * (a[:, 1] - p1[1]) - (p2[1] - p1[1]) * (a[:, 0] - p1[0])
        d2 = (p2[0] - p1[0]) * (b[:, 1] - p1[1]) - (p2[1] - p1[1]) * (b[:, 0] - p1[0])
        d3 = (b[:, 0] - a[:, 0]) * (p1[1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (p1[0] - a[:, 0])
        d4 = (b[:, 0] - a[:, 0]) * (p2[1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (p2[0] - a[:, 0])
        maybe = (d1 * d2 <= slack) & (d3 * d4 <= slack)
        for j in np.nonzero(maybe)[0]:
            j = int(j)
            if j <= i:
                continue
            if j == i + 1 or (i == 0 and j == n - 1):
                if n == 3:
                    continue
                # 相邻边只能共享一个端点：共线折返才会重叠
                s = points[j] if j == i + 1 else points[0]
                o1 = points[i] if j == i + 1 else points[1]
                o2 = points[(j + 1) % n] if j == i + 1 else points[n - 1]
                if orient(o1, s, o2) == 0 and (on_segment(s, o1, o2) or on_segment(s, o2, o1)):
                    return i, j
                continue
            if segments_intersect(points[i], points[(i + 1) % n], points[j], points[(j + 1) % n]):
                return i, j
    return None


def validate_polygon(raw_vertices: Sequence[Sequence[float]], allow_collinear: bool = False) -> Polygon:
    """
    校验并构造多边形

    Args:
        raw_vertices: 顶点序列，任意方向
        allow_collinear: 是否允许连续三点共线（弦切分得到的半多边形需要）

    Returns:
        逆时针 Polygon
    """
    points = [Point(float(x), float(y)) for x, y in raw_vertices]
    if len(points) < 3:
        raise TooFewVertices(f"至少需要 3 个顶点，实际 {len(points)}")
    for k, v in enumerate(points):
        if not (math.isfinite(v.x) and math.isfinite(v.y)):
            raise NotSimple(f"顶点 {k} 坐标不是有限数")
    if len(set(points)) != len(points):
        seen = {}
        for k, v in enumerate(points):
            if v in seen:
                raise DuplicateVertex(f"顶点 {seen[v]} 与 {k} 重合: {tuple(v)}")
            seen[v] = k
    bad = _simplicity_violation(points)
    if bad is not None:
        raise NotSimple(f"边 {bad[0]} 与边 {bad[1]} 相交")
    if not allow_collinear:
        n = len(points)
        for k in range(n):
            if orient(points[k - 1], points[k], points[(k + 1) % n]) == 0:
                raise CollinearRun(f"顶点 {k} 与相邻两点共线")
    area = signed_area(points)
    if area == 0.0:
        raise CollinearRun("多边形面积为零")
    if area < 0:
        points.reverse()
        logger.debug("输入为顺时针，已翻转为逆时针")
    return Polygon(tuple(points))


def contains(P: Polygon, x: Sequence[float]) -> bool:
    """x 是否在闭区域 P 内（边界算在内）"""
    inside = False
    for a, b in P.edges:
        if on_segment(a, b, x):
            return True
        if (a[1] > x[1]) != (b[1] > x[1]):
            side = orient(a, b, x)
            if (b[1] > a[1] and side > 0) or (b[1] < a[1] and side < 0):
                inside = not inside
    return inside


def locate_on_boundary(P: Polygon, x: Sequence[float], tol: float = 1e-9) -> Optional[BoundaryPos]:
    """边界点 → BoundaryPos；不在边界上返回 None"""
    for i, v in enumerate(P.vertices):
        if v[0] == x[0] and v[1] == x[1]:
            return BoundaryPos(i, 0.0)
    for i, (a, b) in enumerate(P.edges):
        if on_segment(a, b, x):
            return BoundaryPos(i, _edge_param(a, b, x)).normalized(P.n)
    best, best_d = None, tol * P.scale()
    for i, (a, b) in enumerate(P.edges):
        t = _edge_param(a, b, x)
        px, py = a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])
        d = math.hypot(px - x[0], py - x[1])
        if d <= best_d:
            best, best_d = BoundaryPos(i, t).normalized(P.n), d
    return best


def _edge_param(a, b, x) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    t = ((x[0] - a[0]) * dx + (x[1] - a[1]) * dy) / (dx * dx + dy * dy)
    return min(1.0, max(0.0, t))


def _enters_interior(P: Polygon, pos: BoundaryPos, d: Sequence[float]) -> bool:
    """从边界点沿方向 d 出发是否进入多边形内部"""
    origin = pos.point(P)
    ahead = (origin[0] + d[0], origin[1] + d[1])
    if pos.t > 0.0:
        a, b = P.edges[pos.edge_index]
        return orient(a, b, (b[0] + d[0], b[1] + d[1])) > 0
    i = pos.edge_index
    nxt, prv = P[i + 1], P[i - 1]
    if P.is_convex(i):
        return orient(origin, nxt, ahead) > 0 and orient(origin, ahead, prv) > 0
    # 反射顶点：只有严格落在外部楔形里才算离开
    outside = orient(origin, ahead, nxt) > 0 and orient(origin, prv, ahead) > 0
    on_edge = orient(origin, nxt, ahead) == 0 or orient(origin, prv, ahead) == 0
    return not outside and not on_edge


def ray_shoot(P: Polygon, origin: Sequence[float], direction: Sequence[float]) -> BoundaryPos:
    """
    射线求交

    Args:
        P: 多边形
        origin: 起点（闭区域内）
        direction: 非零方向

    Returns:
        开射线遇到的第一个边界点；起点在边界上且射线立即离开时返回起点位置
    """
    dx, dy = float(direction[0]), float(direction[1])
    if dx == 0.0 and dy == 0.0:
        raise DegenerateRay("射线方向为零向量")
    start = locate_on_boundary(P, origin, tol=0.0)
    if start is not None and not _enters_interior(P, start, (dx, dy)):
        return start
    norm = math.hypot(dx, dy)
    eps = 1e-12 * P.scale() / norm
    best_s, best_pos = math.inf, None
    far = (origin[0] + dx, origin[1] + dy)
    for i, (a, b) in enumerate(P.edges):
        if start is not None and start.t > 0.0 and i == start.edge_index:
            continue
        if start is not None and start.t == 0.0 and i in (start.edge_index, (start.edge_index - 1) % P.n):
            continue
        hit = line_intersection_param(origin, (dx, dy), a, b)
        if hit is None:
            continue
        s, t = hit
        if s <= eps or t < -1e-12 or t > 1.0 + 1e-12:
            continue
        # 端点命中用精确谓词复核
        if t < 0.0 or t > 1.0:
            if orient(origin, far, a if t < 0.0 else b) != 0:
                continue
        if s < best_s:
            best_s, best_pos = s, BoundaryPos(i, min(1.0, max(0.0, t)))
    if best_pos is None:
        raise DegenerateRay(f"射线从 {tuple(origin)} 出发没有命中边界")
    return _snap_to_vertex(P, best_pos).normalized(P.n)


def _snap_to_vertex(P: Polygon, pos: BoundaryPos) -> BoundaryPos:
    a, b = P.edges[pos.edge_index]
    length = math.hypot(b[0] - a[0], b[1] - a[1])
    if pos.t * length <= 1e-12 * P.scale():
        return BoundaryPos(pos.edge_index, 0.0)
    if (1.0 - pos.t) * length <= 1e-12 * P.scale():
        return BoundaryPos(pos.edge_index, 1.0)
    return pos


def segment_inside(P: Polygon, p: Sequence[float], q: Sequence[float]) -> bool:
    """闭线段 pq 是否整体位于闭区域 P 内"""
    for a, b in P.edges:
        if segments_cross(p, q, a, b):
            return False
    dx, dy = q[0] - p[0], q[1] - p[1]
    denom = dx * dx + dy * dy
    if denom == 0.0:
        return contains(P, p)
    cuts = [0.0, 1.0]
    for v in P.vertices:
        if on_segment(p, q, v):
            cuts.append(((v[0] - p[0]) * dx + (v[1] - p[1]) * dy) / denom)
    cuts.sort()
    for s0, s1 in zip(cuts, cuts[1:]):
        if s1 - s0 <= 0.0:
            continue
        mid = 0.5 * (s0 + s1)
        if not contains(P, (p[0] + mid * dx, p[1] + mid * dy)):
            return False
    return True


def make_chord(P: Polygon, p: Sequence[float], q: Sequence[float]) -> Chord:
    """由两个边界点构造弦，并检查不沿边界"""
    pa = locate_on_boundary(P, p)
    pb = locate_on_boundary(P, q)
    if pa is None or pb is None:
        raise ChordOnBoundary(f"弦端点不在边界上: {tuple(p)}, {tuple(q)}")
    pp, qq = Point(*pa.point(P)), Point(*pb.point(P))
    if pp == qq:
        raise ChordOnBoundary("弦退化为一点")
    mid = (0.5 * (pp[0] + qq[0]), 0.5 * (pp[1] + qq[1]))
    if locate_on_boundary(P, mid, tol=0.0) is not None:
        raise ChordOnBoundary(f"弦 {tuple(pp)}–{tuple(qq)} 沿边界")
    return Chord(pa, pb, (pp, qq))


def _vertices_between(P: Polygon, pa: BoundaryPos, pb: BoundaryPos) -> List[int]:
    """逆时针方向严格位于 pa 与 pb 之间的顶点"""
    sa, sb = pa.scalar(), pb.scalar()
    if sb <= sa:
        sb += P.n
    return [k % P.n for k in range(math.floor(sa) + 1, math.ceil(sb))]


def chord_split(P: Polygon, c: Chord) -> Tuple[Polygon, Polygon]:
    """
    沿弦把多边形切成两半

    Returns:
        (弦 a→b 左侧多边形, 右侧多边形)，两者都逆时针，保留弦端点作为顶点
    """
    p, q = c.segment
    if c.a.edge_index == c.b.edge_index and c.a.t > 0.0 and c.b.t > 0.0:
        raise ChordOnBoundary("弦两端在同一条边上")
    mid = (0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1]))
    if locate_on_boundary(P, mid, tol=0.0) is not None:
        raise ChordOnBoundary(f"弦 {tuple(p)}–{tuple(q)} 沿边界")
    left = [p, q] + [P[k] for k in _vertices_between(P, c.b, c.a)]
    right = [q, p] + [P[k] for k in _vertices_between(P, c.a, c.b)]
    return Polygon(tuple(Point(*v) for v in left)), Polygon(tuple(Point(*v) for v in right))
