"""
上包络 φ(x) = max g_i(x)
"""
import logging
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..config import EPS_D
from .triangles import NEG_INF, ApexedTriangle, TriangleArrays

logger = logging.getLogger(__name__)


def _as_arrays(ts: Union[Sequence[ApexedTriangle], TriangleArrays]) -> TriangleArrays:
    return ts if isinstance(ts, TriangleArrays) else TriangleArrays(list(ts))


def envelope(
    ts: Union[Sequence[ApexedTriangle], TriangleArrays],
    x: Sequence[float],
    tol: float = EPS_D,
    scale: float = 1.0,
) -> Tuple[float, List[int]]:
    """
    在 x 处求包络值与活动三角形

    Args:
        ts: 三角形（或其数组视图）
        x: 查询点
        tol: 活动集的值容差
        scale: 多边形尺度，决定包含判定的几何容差

    Returns:
        (φ(x), 值在最大值 tol 以内的三角形下标)；x 不在任何三角形内时为 (-inf, [])
    """
    arrays = _as_arrays(ts)
    if len(arrays) == 0:
        return NEG_INF, []
    inside = arrays.member_mask(x, 1e-12 * scale * scale)
    if not inside.any():
        return NEG_INF, []
    values = np.where(inside, arrays.values(x), -np.inf)
    best = float(values.max())
    active = np.flatnonzero(values >= best - tol)
    return best, [int(k) for k in active]
