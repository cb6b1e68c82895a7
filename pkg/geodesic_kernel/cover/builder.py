"""
覆盖构建

完整流水线：最远邻 → 边界分解 → 过渡沙漏 → 漏斗 → 三角形，并记录每个三角形的来源。
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..geometry import Polygon
from ..structure import (
    BoundaryDecomposition,
    FarthestMap,
    Funnel,
    HourglassSet,
    TreeBank,
    all_farthest_neighbors,
    build_all_hourglasses,
    build_funnel,
    decompose_boundary,
)
from .funnel_cover import cover_funnel
from .hourglass_cover import cover_hourglass
from .triangles import ApexedTriangle, PieceStats, TriangleArrays

logger = logging.getLogger(__name__)

COVER_FORMAT = 1


@dataclass(frozen=True)
class Provenance:
    """三角形来源：kind 为 "hourglass"（key 为过渡边）或 "funnel"（key 为标记顶点）"""
    kind: str
    key: Tuple[int, ...]


@dataclass
class CoverStats:
    n: int = 0
    num_triangles: int = 0
    num_hourglass_triangles: int = 0
    num_funnel_triangles: int = 0
    sum_hourglass_size: int = 0
    max_chord_multiplicity: int = 0
    flagged_chains: int = 0
    dropped_degenerate: int = 0
    triangle_constant: float = 0.0
    hourglass_constant: float = 0.0

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class Cover:
    """
    带顶点三角形覆盖 τ

    属性:
        triangles: 三角形
        provenance: 与 triangles 一一对应的来源
        stats: 统计
        farthest / decomposition / hourglasses / funnels: 构建过程中的结构（从缓存加载时为空）
    """
    polygon: Polygon
    triangles: List[ApexedTriangle]
    provenance: List[Provenance]
    stats: CoverStats
    farthest: Optional[FarthestMap] = field(default=None, repr=False)
    decomposition: Optional[BoundaryDecomposition] = field(default=None, repr=False)
    hourglasses: Optional[HourglassSet] = field(default=None, repr=False)
    funnels: Dict[int, Funnel] = field(default_factory=dict, repr=False)
    _arrays: Optional[TriangleArrays] = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.triangles)

    @property
    def arrays(self) -> TriangleArrays:
        if self._arrays is None:
            self._arrays = TriangleArrays(self.triangles)
        return self._arrays

    def to_dict(self) -> Dict[str, Any]:
        return {
            "format": COVER_FORMAT,
            "triangles": [t.to_dict() for t in self.triangles],
            "provenance": [{"kind": p.kind, "key": list(p.key)} for p in self.provenance],
            "stats": self.stats.to_dict(),
        }

    @classmethod
    def from_dict(cls, P: Polygon, data: Dict[str, Any]) -> "Cover":
        if data.get("format") != COVER_FORMAT:
            raise ValueError(f"不支持的覆盖格式: {data.get('format')}")
        return cls(
            P,
            [ApexedTriangle.from_dict(t) for t in data["triangles"]],
            [Provenance(p["kind"], tuple(p["key"])) for p in data["provenance"]],
            CoverStats(**data["stats"]),
        )


def build_cover(P: Polygon, threads: int = 1, trees: Optional[TreeBank] = None) -> Cover:
    """
    构建多边形的完整覆盖

    Args:
        P: 多边形
        threads: 并行线程数（树的批量构建与各沙漏、漏斗的覆盖）
        trees: 可复用的树缓存

    Returns:
        Cover
    """
    fm = all_farthest_neighbors(P, threads=threads, trees=trees)
    bd = decompose_boundary(P, fm)
    hs = build_all_hourglasses(P, bd, fm, threads=threads)
    funnels = {v: build_funnel(P, v, bd, hs.hourglasses) for v in bd.marked}

    def hourglass_job(edge):
        a, b = edge
        stats = PieceStats()
        return cover_hourglass(P, hs.hourglasses[edge], fm.trees.get(a), fm.trees.get(b), stats), stats

    def funnel_job(v):
        stats = PieceStats()
        return cover_funnel(P, funnels[v], fm.trees.get(v), stats), stats

    edges = list(hs.hourglasses)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            h_parts = list(pool.map(hourglass_job, edges))
            f_parts = list(pool.map(funnel_job, bd.marked))
    else:
        h_parts = [hourglass_job(e) for e in edges]
        f_parts = [funnel_job(v) for v in bd.marked]

    triangles: List[ApexedTriangle] = []
    provenance: List[Provenance] = []
    dropped = sum(s.dropped for _, s in h_parts) + sum(s.dropped for _, s in f_parts)
    for edge, (part, _) in zip(edges, h_parts):
        triangles.extend(part)
        provenance.extend(Provenance("hourglass", edge) for _ in part)
    n_hourglass = len(triangles)
    for v, (part, _) in zip(bd.marked, f_parts):
        triangles.extend(part)
        provenance.extend(Provenance("funnel", (v,)) for _ in part)

    stats = CoverStats(
        n=P.n,
        num_triangles=len(triangles),
        num_hourglass_triangles=n_hourglass,
        num_funnel_triangles=len(triangles) - n_hourglass,
        sum_hourglass_size=hs.sum_size,
        max_chord_multiplicity=hs.max_chord_multiplicity,
        flagged_chains=len(hs.separators.flagged),
        dropped_degenerate=dropped,
        triangle_constant=len(triangles) / P.n,
        hourglass_constant=hs.sum_size / P.n,
    )
    logger.info(
        f"覆盖完成: |τ|={stats.num_triangles}（沙漏 {n_hourglass}，漏斗 {stats.num_funnel_triangles}），"
        f"Σ|H|={stats.sum_hourglass_size}"
    )
    return Cover(P, triangles, provenance, stats, fm, bd, hs, funnels)
