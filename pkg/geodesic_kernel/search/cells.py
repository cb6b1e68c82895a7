"""
搜索单元

单元是若干半多边形与 P 的交，用 shapely 多边形表示。一轮剪枝：从单元内的三角形边
取弦，随机抽一个 epsilon 网，把网弦和过端点、交点的竖直弦插进单元，
polygonize 得到子单元，再用弦预言机找出包含中心的那一个。
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import shapely
from shapely.geometry import LineString, Point as ShapelyPoint, Polygon as ShapelyPolygon
from shapely.geometry.base import BaseGeometry
from shapely.ops import polygonize, unary_union

from ..config import SearchSettings
from ..cover import ApexedTriangle, TriangleArrays
from ..errors import CellTooComplex, InconsistentOracles
from ..geometry import Point, Polygon, locate_on_boundary
from .oracle import SideDecision, side_of_center
from .regions import Segment, Verdict, clip_segment, line_piece_through, local_side, region_extent

logger = logging.getLogger(__name__)

MAX_CELL_CHORDS = 4


@dataclass
class SearchCell:
    """
    搜索单元

    属性:
        region: 单元区域
        triangle_ids: 与单元相交的三角形编号
        chords: 围成单元的弦段
    """
    region: ShapelyPolygon
    triangle_ids: List[int]
    chords: List[Segment] = field(default_factory=list)

    @property
    def size(self) -> int:
        """区域顶点数"""
        return max(0, len(self.region.exterior.coords) - 1)

    @property
    def m(self) -> int:
        return max(self.size, len(self.triangle_ids))

    def is_triangle(self) -> bool:
        return self.size == 3


@dataclass(frozen=True)
class Center:
    """搜索中直接命中的中心"""
    point: Point
    radius: float
    decision: Optional[SideDecision] = None


class TriangleIndex:
    """三角形的 numpy 与 shapely 视图，供预言机与剪枝共用"""

    def __init__(self, triangles: Sequence[ApexedTriangle]):
        self.triangles = list(triangles)
        self.arrays = TriangleArrays(self.triangles)
        if self.triangles:
            coords = np.stack([self.arrays.apex, self.arrays.b, self.arrays.c], axis=1)
            self.polygons = shapely.polygons(coords)
        else:
            self.polygons = np.array([], dtype=object)

    def __len__(self) -> int:
        return len(self.triangles)

    def subset(self, ids: Sequence[int]) -> TriangleArrays:
        return TriangleArrays([self.triangles[i] for i in ids])


def _chord_key(seg: Segment) -> Tuple[float, ...]:
    a = (round(seg[0][0], 12), round(seg[0][1], 12))
    b = (round(seg[1][0], 12), round(seg[1][1], 12))
    return a + b if a <= b else b + a


def triangle_chords(P: Polygon, t: ApexedTriangle) -> List[Segment]:
    """三角形从顶点出发的两条边中不沿边界的那些（至少一条）"""
    out: List[Segment] = []
    for end in (t.b, t.c):
        if end[0] == t.apex[0] and end[1] == t.apex[1]:
            continue
        mid = (0.5 * (t.apex[0] + end[0]), 0.5 * (t.apex[1] + end[1]))
        if locate_on_boundary(P, mid, tol=1e-12) is None:
            out.append((t.apex, end))
    return out


def candidate_chords(P: Polygon, index: TriangleIndex, ids: Sequence[int], region: BaseGeometry) -> List[Segment]:
    """τ_R 的三角形边中穿过单元内部的弦，去重"""
    tol = 1e-9 * region_extent(region)
    seen: Dict[Tuple[float, ...], Segment] = {}
    interior = region.buffer(-tol) if tol > 0.0 else region
    for i in ids:
        for seg in triangle_chords(P, index.triangles[i]):
            key = _chord_key(seg)
            if key in seen:
                continue
            if LineString(seg).intersects(interior):
                seen[key] = seg
    return list(seen.values())


def net_size(population: int, eps: float) -> int:
    return min(population, math.ceil((8.0 / eps) * math.log(8.0 / eps)))


def epsilon_net_chords(chords: Sequence[Segment], eps: float, seed: int) -> List[Segment]:
    """
    随机 epsilon 网

    样本量 min(|C|, ceil((8/eps)·ln(8/eps)))，固定种子可复现；保持原有顺序。
    """
    size = net_size(len(chords), eps)
    if size >= len(chords):
        return list(chords)
    rng = np.random.default_rng(seed)
    picked = np.sort(rng.choice(len(chords), size=size, replace=False))
    return [chords[int(k)] for k in picked]


def _vertical_chord(region: BaseGeometry, x: Sequence[float], tol: float) -> Optional[Segment]:
    """过 x 的竖直线在单元内的那一段；贴着单元边界时返回 None"""
    full = line_piece_through(region, x, (0.0, 1.0), tol)
    if full is None:
        return None
    mid = ShapelyPoint(0.5 * (full[0][0] + full[1][0]), 0.5 * (full[0][1] + full[1][1]))
    if region.boundary.distance(mid) <= tol:
        return None
    return full


def cut_pieces(R: SearchCell, net: Sequence[Segment]) -> List[Segment]:
    """
    网弦在单元内的部分，加上过端点与交点的竖直弦

    每条切割段都贯穿单元，预言机对它的结论才能把单元一分为二。
    """
    region = R.region
    tol = 1e-9 * region_extent(region)
    pieces = [s for s in (clip_segment(region, p, q, tol) for p, q in net) if s is not None]
    anchors: List[Tuple[float, float]] = []
    for p, q in pieces:
        anchors.extend([tuple(p), tuple(q)])
    for i in range(len(pieces)):
        for j in range(i + 1, len(pieces)):
            hit = LineString(pieces[i]).intersection(LineString(pieces[j]))
            if isinstance(hit, ShapelyPoint) and not hit.is_empty:
                anchors.append((hit.x, hit.y))
    out: Dict[Tuple[float, ...], Segment] = {}
    for seg in pieces:
        out.setdefault(_chord_key(seg), seg)
    for x in anchors:
        seg = _vertical_chord(region, x, tol)
        if seg is not None:
            out.setdefault(_chord_key(seg), seg)
    return list(out.values())


def decompose_cell(R: SearchCell, net: Sequence[Segment]) -> Tuple[List[SearchCell], List[Segment]]:
    """
    用网把单元切成子单元

    Args:
        R: 当前单元
        net: 网弦（会先裁剪到 R）

    Returns:
        (铺满 R 的子单元, 本次插入的切割段)
    """
    region = R.region
    cuts = cut_pieces(R, net)
    if not cuts:
        return [SearchCell(region, list(R.triangle_ids), list(R.chords))], []
    extent = region_extent(region)
    noded = unary_union([region.exterior] + [LineString(s) for s in cuts])
    faces = [f for f in polygonize(noded) if f.area > 1e-14 * extent * extent]
    inside = region.buffer(1e-9 * extent)
    faces = [f for f in faces if inside.contains(f.representative_point())]
    total = sum(f.area for f in faces)
    if not faces or abs(total - region.area) > 1e-7 * region.area:
        logger.error(f"子单元面积之和 {total:.12g} 与单元面积 {region.area:.12g} 不符")
        raise CellTooComplex(f"子单元未能铺满单元（{len(faces)} 个面）")
    cells: List[SearchCell] = []
    bounding = list(R.chords) + cuts
    for face in faces:
        chords = [s for s in bounding if local_side(face, s) is not None]
        if len(chords) > MAX_CELL_CHORDS:
            logger.warning(f"子单元被 {len(chords)} 条弦围成，超过 {MAX_CELL_CHORDS}")
        cells.append(SearchCell(face, list(R.triangle_ids), chords))
    logger.debug(f"单元切成 {len(cells)} 块（切割段 {len(cuts)} 条）")
    return cells, cuts


def locate_cell(
    cells: Sequence[SearchCell],
    cuts: Sequence[Segment],
    index: TriangleIndex,
    ids: Sequence[int],
    region: BaseGeometry,
    settings: Optional[SearchSettings] = None,
    threads: int = 1,
) -> Union[SearchCell, Center]:
    """
    找出包含中心的子单元

    每条切割段问一次预言机；某次结论为“在弦上”时直接返回该点。
    一个子单元被选中，当且仅当贴着它的每条切割段的结论都指向它所在的一侧。

    Args:
        cells: decompose_cell 的子单元
        cuts: 本次插入的切割段
        index: 三角形索引
        ids: 当前单元的活动三角形
        region: 当前单元区域（端点处判定下降方向是否可行）
        settings: 搜索参数
        threads: 并行问询预言机的线程数
    """
    settings = settings or SearchSettings()
    if len(cells) == 1:
        return cells[0]
    arrays = index.subset(ids)

    def ask(seg: Segment) -> SideDecision:
        return side_of_center(arrays, seg, region=region, settings=settings, ids=ids)

    if threads > 1 and len(cuts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            decisions = list(pool.map(ask, cuts))
    else:
        decisions = [ask(s) for s in cuts]
    for seg, dec in zip(cuts, decisions):
        if dec.verdict is Verdict.ON:
            logger.info(f"预言机在弦上命中中心 {dec.point}，φ={dec.value:.9g}")
            return Center(dec.point, dec.value, dec)
    verdicts = {_chord_key(s): d.verdict for s, d in zip(cuts, decisions)}
    for cell in cells:
        consistent = True
        for seg in cuts:
            side = local_side(cell.region, seg)
            if side is not None and side is not verdicts[_chord_key(seg)]:
                consistent = False
                break
        if consistent:
            return cell
    logger.error(f"{len(cells)} 个子单元都与 {len(cuts)} 个预言机结论矛盾")
    raise InconsistentOracles(f"{len(cells)} 个子单元都与预言机结论矛盾")


def prune_triangles(index: TriangleIndex, ids: Sequence[int], cell: Union[SearchCell, BaseGeometry]) -> List[int]:
    """与单元（闭）相交的三角形"""
    region = cell.region if isinstance(cell, SearchCell) else cell
    if not ids:
        return []
    grown = region.buffer(1e-9 * region_extent(region))
    picked = np.asarray(ids, dtype=int)
    mask = shapely.intersects(index.polygons[picked], grown)
    return [int(i) for i in picked[mask]]
