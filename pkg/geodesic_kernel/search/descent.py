"""
局部下降方向

x 处沿单位方向 u 的方向导数，只在包含方向 u 的活动三角形里取最大斜率：
x 恰为三角形顶点时斜率为 1（|x - a| 在 a 处的次微分是整个单位圆盘，但只在三角形的楔形里起作用），
否则为单位梯度与 u 的内积。x 不在任何活动顶点上时，这就是活动梯度凸包的最小范数问题；
在顶点上只能逐方向比较，候选方向取均匀扇形加上所有临界方向（梯度的反向、两两平分线、
切锥边界及其两侧的微扰）。
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence

import numpy as np

from ..config import EPS_D
from ..cover import TriangleArrays
from ..errors import ApexAtQuery
from .hull import min_norm_in_hull

logger = logging.getLogger(__name__)

_FAN = 360
_NUDGE = 1e-5
# 超过这个数目的活动梯度不再枚举两两平分线
_PAIR_LIMIT = 40

Feasible = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class Descent:
    """
    最陡可行下降

    属性:
        rate: 最陡下降速率；0 表示没有可行下降方向
        direction: 对应的单位方向，rate 为 0 时为 None
    """
    rate: float
    direction: Optional[np.ndarray]


class LocalCones:
    """
    x 处活动三角形的切锥与斜率

    Args:
        arrays: 三角形
        x: 查询点
        scale: 多边形尺度
        tol: 活动集的值容差
        reach: 距离容差；离 x 不超过 reach 的三角形也算包含 x，离 x 不超过 reach 的边给出切锥约束
    """

    def __init__(self, arrays: TriangleArrays, x: Sequence[float], scale: float, tol: float, reach: float):
        self.x = np.asarray(x, dtype=float)
        self.reach = reach
        if len(arrays) == 0:
            self.value, self.active = -math.inf, np.zeros(0, dtype=int)
        else:
            inside = arrays.member_mask(self.x, reach * max(scale, 1e-300))
            values = np.where(inside, arrays.values(self.x), -np.inf)
            self.value = float(values.max())
            self.active = np.flatnonzero(values >= self.value - tol) if inside.any() else np.zeros(0, dtype=int)
        apexes = arrays.apex[self.active] if len(self.active) else np.zeros((0, 2))
        diff = self.x[None, :] - apexes
        norms = np.hypot(diff[:, 0], diff[:, 1])
        self.at_apex = norms <= reach
        self.grads = np.where(self.at_apex[:, None], 0.0, diff / np.where(self.at_apex, 1.0, norms)[:, None])
        self.normals: List[np.ndarray] = [self._cone(arrays, int(k)) for k in self.active]

    def _cone(self, arrays: TriangleArrays, k: int) -> np.ndarray:
        """三角形 k 在 x 处切锥的内法向；x 在内部时为空"""
        corners = (arrays.apex[k], arrays.b[k], arrays.c[k])
        out = []
        for o, e in ((0, 1), (1, 2), (2, 0)):
            d = corners[e] - corners[o]
            length = float(np.hypot(d[0], d[1]))
            if length == 0.0:
                continue
            n = arrays.sign[k] * np.array([-d[1], d[0]]) / length
            if float(n @ (self.x - corners[o])) <= self.reach:
                out.append(n)
        return np.array(out, dtype=float).reshape(-1, 2)

    def __len__(self) -> int:
        return len(self.active)

    @property
    def has_apex(self) -> bool:
        return bool(self.at_apex.any())

    def unit_gradients(self) -> np.ndarray:
        """活动三角形的单位梯度"""
        if self.has_apex:
            raise ApexAtQuery(f"查询点 {tuple(self.x)} 与活动三角形顶点重合")
        return self.grads

    def slopes(self, U: np.ndarray) -> np.ndarray:
        """每个方向的方向导数；没有活动三角形包含该方向时为 nan"""
        out = np.full(len(U), -np.inf)
        covered = np.zeros(len(U), dtype=bool)
        for k, cons in enumerate(self.normals):
            inside = np.all(U @ cons.T >= -1e-12, axis=1) if len(cons) else np.ones(len(U), dtype=bool)
            s = np.ones(len(U)) if self.at_apex[k] else U @ self.grads[k]
            out = np.where(inside, np.maximum(out, s), out)
            covered |= inside
        return np.where(covered, out, np.nan)

    def directions(self, extra: Iterable[Sequence[float]] = ()) -> np.ndarray:
        angles: List[float] = list(np.linspace(0.0, 2.0 * math.pi, _FAN, endpoint=False))
        live = [g for g, apex in zip(self.grads, self.at_apex) if not apex]
        thetas = [math.atan2(g[1], g[0]) for g in live]
        angles.extend(t + math.pi for t in thetas)
        if len(thetas) <= _PAIR_LIMIT:
            for i in range(len(thetas)):
                for j in range(i + 1, len(thetas)):
                    mid = 0.5 * (thetas[i] + thetas[j])
                    angles.extend((mid, mid + math.pi))
        edges = [math.atan2(n[1], n[0]) + s * 0.5 * math.pi for cons in self.normals for n in cons for s in (1, -1)]
        edges.extend(math.atan2(v[1], v[0]) for v in extra if v[0] != 0.0 or v[1] != 0.0)
        for e in edges:
            angles.extend((e - _NUDGE, e, e + _NUDGE))
        a = np.asarray(angles)
        return np.column_stack([np.cos(a), np.sin(a)])

    def steepest(self, feasible: Optional[Feasible] = None, extra: Iterable[Sequence[float]] = ()) -> Descent:
        """
        最陡的可行下降方向

        Args:
            feasible: 方向 → 是否可行的批量判定；缺省时只要求有活动三角形包含该方向
            extra: 额外的候选方向（如单元边界的方向）
        """
        if not len(self):
            return Descent(0.0, None)
        U = self.directions(extra)
        s = self.slopes(U)
        descending = ~np.isnan(s) & (np.nan_to_num(s, nan=0.0) < -EPS_D)
        if feasible is not None and descending.any():
            idx = np.flatnonzero(descending)
            descending[idx[~np.asarray(feasible(U[idx]), dtype=bool)]] = False
        if not descending.any():
            return Descent(0.0, None)
        idx = np.flatnonzero(descending)
        k = int(idx[np.argmin(s[idx])])
        return Descent(float(-s[k]), U[k].copy())


def descent_rate(cones: LocalCones, feasible: Optional[Feasible] = None) -> float:
    """
    最陡可行下降速率

    没有活动顶点时等于活动梯度凸包的最小范数；否则逐方向比较。
    """
    if not len(cones):
        return math.inf
    try:
        grads = cones.unit_gradients()
    except ApexAtQuery:
        return cones.steepest(feasible).rate
    z, _ = min_norm_in_hull(grads)
    return float(np.hypot(z[0], z[1]))
