"""
剪枝搜索

每一轮：取当前单元内三角形的弦，抽 epsilon 网，分批切开单元、定位、剪掉不相交的三角形。
m_R 没有减半就换种子重来，多次失败后改用小子集的全部弦作为兜底网。
单元定位失败也算一次失败的尝试；一轮里每次定位都失败时停止剪枝，由最终求解在当前单元里接手。
"""
import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
from shapely.geometry import Point as ShapelyPoint

from ..config import SearchSettings
from ..cover import Cover
from ..errors import CellTooComplex, InconsistentOracles, NoProgress
from ..geometry import Point, Polygon
from .cells import (
    Center,
    SearchCell,
    TriangleIndex,
    candidate_chords,
    decompose_cell,
    epsilon_net_chords,
    locate_cell,
    prune_triangles,
)
from .regions import Segment, polygon_region, region_extent

logger = logging.getLogger(__name__)


@dataclass
class IterationRecord:
    """一轮剪枝的记录"""
    iteration: int
    m_before: int
    m_after: int
    attempts: int
    fallback: bool

    @property
    def ratio(self) -> float:
        return self.m_after / self.m_before if self.m_before else 0.0


@dataclass
class SearchTrace:
    """
    搜索过程统计

    属性:
        iterations: 每轮记录
        audit_failures: 审计时参考中心不在单元内的次数
        oracle_failures: 单元定位失败（预言机结论互相矛盾或切分失败）后重新采样的次数
    """
    iterations: List[IterationRecord] = field(default_factory=list)
    audit_failures: int = 0
    oracle_failures: int = 0

    @property
    def retries(self) -> int:
        return sum(r.attempts - 1 for r in self.iterations)

    def halving_rate(self) -> float:
        """m_R 至少减半的轮次比例"""
        if not self.iterations:
            return 1.0
        return sum(1 for r in self.iterations if r.ratio <= 0.5) / len(self.iterations)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "iterations": [dict(asdict(r), ratio=r.ratio) for r in self.iterations],
            "audit_failures": self.audit_failures,
            "oracle_failures": self.oracle_failures,
            "retries": self.retries,
        }


@dataclass(frozen=True)
class FinalRegion:
    """搜索停在一个足够小的单元"""
    cell: SearchCell
    triangle_ids: List[int]


@dataclass
class SearchOutcome:
    result: Union[Center, FinalRegion]
    trace: SearchTrace
    index: TriangleIndex = field(repr=False)


def _fallback_net(P: Polygon, index: TriangleIndex, R: SearchCell, settings: SearchSettings, seed: int) -> List[Segment]:
    """随机取一小组三角形，用它们的全部弦做网"""
    rng = np.random.default_rng(seed)
    k = min(settings.fallback_subset, len(R.triangle_ids))
    subset = [R.triangle_ids[int(i)] for i in np.sort(rng.choice(len(R.triangle_ids), size=k, replace=False))]
    return candidate_chords(P, index, subset, R.region)


def refine(
    R: SearchCell,
    net: Sequence[Segment],
    index: TriangleIndex,
    settings: SearchSettings,
    threads: int = 1,
) -> Union[SearchCell, Center]:
    """
    把网分批插进单元，每批之后定位并剪枝

    后面的网弦大多已不穿过缩小后的单元，裁剪后直接跳过。
    """
    cur = R
    for start in range(0, len(net), settings.net_batch):
        cells, cuts = decompose_cell(cur, net[start:start + settings.net_batch])
        if not cuts:
            continue
        located = locate_cell(cells, cuts, index, cur.triangle_ids, cur.region, settings, threads)
        if isinstance(located, Center):
            return located
        ids = prune_triangles(index, cur.triangle_ids, located)
        cur = SearchCell(located.region, ids, located.chords)
    return cur


def search(
    P: Polygon,
    cover: Cover,
    settings: Optional[SearchSettings] = None,
    seed: int = 0,
    audit: bool = False,
    threads: int = 1,
    reference: Optional[Point] = None,
) -> SearchOutcome:
    """
    剪枝搜索中心所在的单元

    Args:
        P: 多边形
        cover: 覆盖
        settings: 搜索参数
        seed: 随机种子
        audit: 审计模式，每轮检查参考中心仍在单元内
        threads: 预言机并行线程数
        reference: 审计用的参考中心；缺省时用暴力预言机计算

    Returns:
        SearchOutcome，结果为 Center 或 FinalRegion
    """
    settings = settings or SearchSettings()
    index = TriangleIndex(cover.triangles)
    rng = np.random.default_rng(seed)
    R = SearchCell(polygon_region(P), list(range(len(index))))
    trace = SearchTrace()
    if audit and reference is None:
        from ..oracles import brute_force_center

        reference = brute_force_center(P, grid=64).point
    iteration = 0
    while R.m > settings.base_case and not R.is_triangle():
        chords = candidate_chords(P, index, R.triangle_ids, R.region)
        if not chords:
            logger.info("单元内已没有三角形的弦，停止剪枝")
            break
        iteration += 1
        best: Optional[SearchCell] = None
        attempts = 0
        used_fallback = False
        for attempt in range(settings.max_retries + 2):
            attempts += 1
            used_fallback = attempt > settings.max_retries
            sub_seed = int(rng.integers(2 ** 31 - 1))
            if used_fallback:
                logger.warning(f"第 {iteration} 轮随机网 {settings.max_retries + 1} 次都没能减半，改用兜底网")
                net = _fallback_net(P, index, R, settings, sub_seed)
            else:
                net = epsilon_net_chords(chords, settings.eps, sub_seed)
            try:
                outcome = refine(R, net, index, settings, threads)
            except (InconsistentOracles, CellTooComplex) as exc:
                trace.oracle_failures += 1
                logger.warning(f"第 {iteration} 轮第 {attempts} 次定位失败（{exc}），重新采样")
                continue
            if isinstance(outcome, Center):
                trace.iterations.append(IterationRecord(iteration, R.m, 0, attempts, used_fallback))
                return SearchOutcome(outcome, trace, index)
            if best is None or outcome.m < best.m:
                best = outcome
            if outcome.m <= R.m / 2:
                break
            logger.warning(f"第 {iteration} 轮第 {attempts} 次: m_R {R.m} → {outcome.m}，未减半，重新采样")
        if best is None:
            logger.error(f"第 {iteration} 轮每次定位都失败，停止剪枝，在当前单元内求解")
            break
        if best.m >= R.m:
            logger.error(f"第 {iteration} 轮没有任何进展（m_R={R.m}）")
            raise NoProgress(f"第 {iteration} 轮 m_R 停在 {R.m}")
        trace.iterations.append(IterationRecord(iteration, R.m, best.m, attempts, used_fallback))
        logger.info(
            f"第 {iteration} 轮: m_R {R.m} → {best.m}，单元顶点 {best.size}，三角形 {len(best.triangle_ids)}"
        )
        R = best
        if audit and reference is not None:
            grown = R.region.buffer(1e-6 * max(region_extent(R.region), P.scale()))
            if not grown.covers(ShapelyPoint(reference[0], reference[1])):
                trace.audit_failures += 1
                logger.error(f"审计失败: 参考中心 {tuple(reference)} 不在第 {iteration} 轮的单元内")
    return SearchOutcome(FinalRegion(R, list(R.triangle_ids)), trace, index)
