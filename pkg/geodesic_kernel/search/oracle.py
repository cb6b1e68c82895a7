"""
弦预言机

把包络限制到一条弦上：每个三角形贡献一个区间上的凸函数 |chord(t) - a| + kappa。
包络在弦上凸，用黄金分割求最小点；再看最小点处有没有可行的下降方向、偏向哪一侧，
决定中心在弦的哪一侧。
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import shapely
from shapely.geometry.base import BaseGeometry

from ..config import EPS_D, SearchSettings
from ..errors import ApexAtQuery, UncoveredChord
from ..geometry import Chord, Point
from ..cover import ApexedTriangle, TriangleArrays
from .descent import Feasible, LocalCones
from .hull import min_norm_in_hull
from .regions import Segment, Verdict, boundary_directions, left_normal

logger = logging.getLogger(__name__)

ChordLike = Union[Chord, Segment, Sequence[Sequence[float]]]
Triangles = Union[Sequence[ApexedTriangle], TriangleArrays]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
# 区间端点的参数容差
_T_SLACK = 1e-9


@dataclass(frozen=True)
class RestrictedFn:
    """
    三角形在弦上的限制

    属性:
        triangle_id: 三角形下标
        t0, t1: 弦参数区间
        apex: 三角形顶点
        kappa: 常数
    """
    triangle_id: int
    t0: float
    t1: float
    apex: Point
    kappa: float

    def value_at(self, x: Sequence[float]) -> float:
        return math.hypot(x[0] - self.apex[0], x[1] - self.apex[1]) + self.kappa


@dataclass(frozen=True)
class SideDecision:
    """
    预言机结论

    属性:
        verdict: 中心在弦的左侧、右侧或就在弦上
        t: 弦上最小点的参数
        value: 最小值
        active: 最小点处的活动三角形下标
        point: 最小点
        gradient_norm: 最小点处最陡可行下降的速率（无活动顶点时即活动梯度凸包的最小范数）
    """
    verdict: Verdict
    t: float
    value: float
    active: Tuple[int, ...]
    point: Point
    gradient_norm: float


def chord_segment(c: ChordLike) -> Segment:
    if isinstance(c, Chord):
        return c.segment
    p, q = c
    return Point(float(p[0]), float(p[1])), Point(float(q[0]), float(q[1]))


def _arrays(ts: Triangles) -> TriangleArrays:
    return ts if isinstance(ts, TriangleArrays) else TriangleArrays(list(ts))


def restrict_to_chord(ts: Triangles, c: ChordLike, ids: Optional[Sequence[int]] = None) -> List[RestrictedFn]:
    """
    求每个三角形与弦的交区间

    每条三角形边给出 t 的一个线性不等式，三者求交（Liang–Barsky）。
    只保留非退化区间。

    Args:
        ts: 三角形
        c: 弦或线段 (p, q)
        ids: ts 中各三角形在外部的编号（默认 0..m-1）

    Returns:
        RestrictedFn 列表，按 triangle_id 升序
    """
    arrays = _arrays(ts)
    m = len(arrays)
    if m == 0:
        return []
    p, q = chord_segment(c)
    p_arr = np.array(p, dtype=float)
    d = np.array([q[0] - p[0], q[1] - p[1]], dtype=float)
    scale = max(
        float(np.abs(arrays.apex).max()), float(np.abs(arrays.b).max()), float(np.abs(arrays.c).max()),
        abs(p[0]), abs(p[1]), abs(q[0]), abs(q[1]), 1e-300,
    )
    tol = 1e-12 * scale * scale
    lo = np.zeros(m)
    hi = np.ones(m)
    empty = np.zeros(m, dtype=bool)
    for o, a in ((arrays.apex, arrays.b), (arrays.b, arrays.c), (arrays.c, arrays.apex)):
        ex, ey = a[:, 0] - o[:, 0], a[:, 1] - o[:, 1]
        base = (ex * (p_arr[1] - o[:, 1]) - ey * (p_arr[0] - o[:, 0])) * arrays.sign
        slope = (ex * d[1] - ey * d[0]) * arrays.sign
        flat = np.abs(slope) <= 1e-300
        empty |= flat & (base < -tol)
        with np.errstate(divide="ignore", invalid="ignore"):
            bound = np.where(flat, 0.0, (-tol - base) / np.where(flat, 1.0, slope))
        lo = np.where(~flat & (slope > 0), np.maximum(lo, bound), lo)
        hi = np.where(~flat & (slope < 0), np.minimum(hi, bound), hi)
    keep = np.flatnonzero(~empty & (hi - lo > 1e-12))
    names = list(ids) if ids is not None else list(range(m))
    return [
        RestrictedFn(
            names[k], float(max(0.0, lo[k])), float(min(1.0, hi[k])),
            Point(float(arrays.apex[k, 0]), float(arrays.apex[k, 1])), float(arrays.kappa[k]),
        )
        for k in keep
    ]


def _check_coverage(fns: Sequence[RestrictedFn]) -> None:
    if not fns:
        logger.error("弦上没有任何三角形")
        raise UncoveredChord("弦上没有任何三角形")
    reach = 0.0
    for fn in sorted(fns, key=lambda f: f.t0):
        if fn.t0 > reach + _T_SLACK:
            logger.error(f"弦参数 ({reach:.3e}, {fn.t0:.3e}) 未被覆盖")
            raise UncoveredChord(f"弦参数 ({reach:.6g}, {fn.t0:.6g}) 未被覆盖")
        reach = max(reach, fn.t1)
    if reach < 1.0 - _T_SLACK:
        logger.error(f"弦参数 ({reach:.3e}, 1) 未被覆盖")
        raise UncoveredChord(f"弦参数 ({reach:.6g}, 1) 未被覆盖")


class _ChordEnvelope:
    """弦上的包络 φ(t)"""

    def __init__(self, fns: Sequence[RestrictedFn], seg: Segment):
        self.fns = list(fns)
        self.p = np.array(seg[0], dtype=float)
        self.d = np.array([seg[1][0] - seg[0][0], seg[1][1] - seg[0][1]], dtype=float)
        self.t0 = np.array([f.t0 for f in fns]) - _T_SLACK
        self.t1 = np.array([f.t1 for f in fns]) + _T_SLACK
        self.apex = np.array([f.apex for f in fns], dtype=float).reshape(-1, 2)
        self.kappa = np.array([f.kappa for f in fns])

    def point(self, t: float) -> np.ndarray:
        return self.p + t * self.d

    def values(self, t: float) -> np.ndarray:
        x = self.point(t)
        vals = np.hypot(x[0] - self.apex[:, 0], x[1] - self.apex[:, 1]) + self.kappa
        live = (self.t0 <= t) & (t <= self.t1)
        return np.where(live, vals, -np.inf)

    def __call__(self, t: float) -> float:
        return float(self.values(t).max())


def _golden_section(phi: _ChordEnvelope, tol: float) -> float:
    lo, hi = 0.0, 1.0
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = phi(x1), phi(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = phi(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = phi(x2)
    mid = 0.5 * (lo + hi)
    # 凸函数的最小点可能落在端点
    return min((mid, 0.0, 1.0), key=phi)


def _minimize(
    fns: Sequence[RestrictedFn],
    seg: Segment,
    tol: float,
    active_tol: float,
) -> Tuple[float, float, List[int], _ChordEnvelope]:
    _check_coverage(fns)
    phi = _ChordEnvelope(fns, seg)
    t = _golden_section(phi, tol)
    vals = phi.values(t)
    value = float(vals.max())
    active = [int(k) for k in np.flatnonzero(vals >= value - active_tol)]
    return t, value, active, phi


def min_on_chord(
    fns: Sequence[RestrictedFn],
    c: ChordLike,
    tol: float = 1e-12,
    active_tol: float = 1e-7,
) -> Tuple[float, float, List[int]]:
    """
    包络在弦上的最小点

    Args:
        fns: restrict_to_chord 的结果，需覆盖 [0, 1]
        c: 弦
        tol: 参数精度
        active_tol: 活动集的值容差

    Returns:
        (t*, φ(t*), 活动三角形编号)
    """
    t, value, active, _ = _minimize(fns, chord_segment(c), tol, active_tol)
    return t, value, [fns[k].triangle_id for k in active]


def _region_feasible(region: BaseGeometry, x: np.ndarray, delta: float) -> Feasible:
    """沿方向走 delta 后仍在单元内"""
    def check(U: np.ndarray) -> np.ndarray:
        pts = shapely.points(x[0] + delta * U[:, 0], x[1] + delta * U[:, 1])
        return np.asarray(shapely.covers(region, pts), dtype=bool)
    return check


def side_of_center(
    ts: Triangles,
    c: ChordLike,
    region: Optional[BaseGeometry] = None,
    settings: Optional[SearchSettings] = None,
    ids: Optional[Sequence[int]] = None,
) -> SideDecision:
    """
    判定中心在弦的哪一侧

    弦上最小点 x* 处，所有可行的下降方向都偏向中心所在的一侧；没有可行下降方向时 x* 就是中心。
    x* 在弦内部且不是活动顶点时直接看梯度凸包；在弦端点或某个活动顶点上时，
    每个三角形的斜率只在它自己的楔形里起作用，要逐方向比较。

    Args:
        ts: 与当前单元相交的全部三角形
        c: 弦（或单元内的弦段）
        region: 当前单元；检查下降方向是否留在单元内，缺省时只要求方向落在某个三角形里
        settings: 搜索参数
        ids: ts 的外部编号

    Returns:
        SideDecision
    """
    settings = settings or SearchSettings()
    arrays = _arrays(ts)
    seg = chord_segment(c)
    fns = restrict_to_chord(arrays, seg, ids)
    t, value, active, phi = _minimize(fns, seg, settings.golden_tolerance, settings.active_tolerance)
    x = phi.point(t)
    point = Point(float(x[0]), float(x[1]))
    active_ids = tuple(fns[k].triangle_id for k in active)
    length = float(np.hypot(phi.d[0], phi.d[1]))
    scale = max(length, float(np.abs(phi.apex).max()), 1e-300)
    cones = LocalCones(arrays, x, scale, settings.active_tolerance, 1e-9 * scale)
    normal = np.array(left_normal(seg))
    interior = _T_SLACK < t < 1.0 - _T_SLACK
    try:
        grads = cones.unit_gradients()
    except ApexAtQuery as exc:
        logger.debug(f"{exc}，逐方向检查可行下降")
        grads = None
    if grads is not None and len(grads):
        z, contains = min_norm_in_hull(grads, tol=EPS_D)
        z_norm = float(np.hypot(z[0], z[1]))
        if contains:
            return SideDecision(Verdict.ON, t, value, active_ids, point, z_norm)
        u = -z / z_norm
        lean = float(u @ normal)
        if interior and abs(lean) > 1e-9 and not np.isnan(cones.slopes(u[None, :])[0]):
            verdict = Verdict.LEFT if lean > 0.0 else Verdict.RIGHT
            return SideDecision(verdict, t, value, active_ids, point, z_norm)

    inside = _region_feasible(region, x, 1e-7 * length) if region is not None else None
    extra = [tuple(phi.d), tuple(-phi.d)]
    if region is not None:
        extra.extend(boundary_directions(region, x, 1e-9 * scale))

    def feasible(U: np.ndarray) -> np.ndarray:
        ok = np.abs(U @ normal) > 1e-9
        idx = np.flatnonzero(ok)
        if inside is not None and len(idx):
            ok[idx] = inside(U[idx])
        return ok

    descent = cones.steepest(feasible, extra)
    if descent.direction is None:
        logger.debug(f"弦上最小点 {point} 处没有可行下降方向，按弦上处理")
        return SideDecision(Verdict.ON, t, value, active_ids, point, 0.0)
    verdict = Verdict.LEFT if float(descent.direction @ normal) > 0.0 else Verdict.RIGHT
    return SideDecision(verdict, t, value, active_ids, point, descent.rate)
