"""
单位梯度凸包的最小范数点
"""
from typing import List, Sequence, Tuple

import numpy as np

from ..config import EPS_D


def _project_segment(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """原点在线段 pq 上的投影"""
    d = q - p
    dd = float(d @ d)
    if dd == 0.0:
        return p
    t = min(1.0, max(0.0, -float(p @ d) / dd))
    return p + t * d


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    return float((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def _convex_hull(pts: np.ndarray) -> List[np.ndarray]:
    """单调链凸包，逆时针，去掉共线点"""
    order = sorted(range(len(pts)), key=lambda k: (pts[k][0], pts[k][1]))
    uniq: List[np.ndarray] = []
    for k in order:
        if not uniq or not np.array_equal(uniq[-1], pts[k]):
            uniq.append(pts[k])
    if len(uniq) <= 2:
        return uniq
    lower: List[np.ndarray] = []
    for p in uniq:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0.0:
            lower.pop()
        lower.append(p)
    upper: List[np.ndarray] = []
    for p in reversed(uniq):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0.0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def min_norm_in_hull(us: Sequence[Sequence[float]], tol: float = EPS_D) -> Tuple[np.ndarray, bool]:
    """
    凸包 conv{u_i} 中离原点最近的点

    Args:
        us: 二维向量（通常为单位梯度）
        tol: 判定“包含原点”的范数阈值

    Returns:
        (最小范数点, 范数是否不超过 tol)
    """
    pts = np.asarray(us, dtype=float).reshape(-1, 2)
    if len(pts) == 0:
        raise ValueError("min_norm_in_hull 需要至少一个向量")
    if len(pts) == 1:
        best = pts[0].copy()
    elif len(pts) == 2:
        best = _project_segment(pts[0], pts[1])
    else:
        hull = _convex_hull(pts)
        if len(hull) == 1:
            best = hull[0].copy()
        elif len(hull) == 2:
            best = _project_segment(hull[0], hull[1])
        else:
            origin = np.zeros(2)
            k = len(hull)
            if all(_cross(hull[i], hull[(i + 1) % k], origin) >= 0.0 for i in range(k)):
                best = origin
            else:
                cands = [_project_segment(hull[i], hull[(i + 1) % k]) for i in range(k)]
                best = min(cands, key=lambda c: float(c @ c))
    return best, float(np.hypot(best[0], best[1])) <= tol
