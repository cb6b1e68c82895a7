"""
SVG 渲染

输出 SVG 1.1 文本。几何坐标原样写入（10 位有效数字），外层 scale(1,-1) 使 y 轴朝上。
"""
import logging
import xml.etree.ElementTree as ET
from typing import Iterable, List, Optional, Sequence

from ..cover import Cover
from ..geometry import Polygon
from ..paths import GeodesicPath, build_spt
from ..search import CenterResult
from ..structure import hourglass_ring

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"

LAYER_COLORS = {
    "polygon": "#333333",
    "hourglass": "#4c72b0",
    "funnel": "#dd8452",
    "wall": "#55a868",
    "center": "#c44e52",
    "path": "#8172b3",
}


def _fmt(v: float) -> str:
    return f"{v:.10g}"


def _points_attr(points: Iterable[Sequence[float]]) -> str:
    return " ".join(f"{_fmt(p[0])},{_fmt(p[1])}" for p in points)


def farthest_paths(P: Polygon, center: CenterResult, tol: float = 1e-7) -> List[GeodesicPath]:
    """从中心到所有（在容差内）最远顶点的测地路径"""
    T = build_spt(P, center.point)
    dist = T.dist[:P.n]
    far = max(float(dist.max()), center.radius)
    targets = [v for v in range(P.n) if dist[v] >= far - tol * max(1.0, far)]
    return [T.path_from_root(v) for v in targets]


class SvgCanvas:
    """y 轴朝上的 SVG 画布"""

    def __init__(self, P: Polygon, margin: float = 0.05):
        minx, miny, maxx, maxy = P.bbox()
        pad = margin * max(maxx - minx, maxy - miny, 1e-12)
        self.width = maxx - minx + 2 * pad
        self.height = maxy - miny + 2 * pad
        self.stroke = 0.004 * max(self.width, self.height)
        self.root = ET.Element("svg", {
            "xmlns": SVG_NS,
            "version": "1.1",
            "viewBox": f"{_fmt(minx - pad)} {_fmt(-(maxy + pad))} {_fmt(self.width)} {_fmt(self.height)}",
            "width": "800",
            "height": _fmt(800.0 * self.height / self.width),
        })
        self.scene = ET.SubElement(self.root, "g", {"transform": "scale(1,-1)"})

    def group(self, layer: str) -> ET.Element:
        return ET.SubElement(self.scene, "g", {"id": layer, "class": layer})

    def polygon(self, parent: ET.Element, points, color: str, fill: str = "none", opacity: float = 1.0) -> ET.Element:
        return ET.SubElement(parent, "polygon", {
            "points": _points_attr(points),
            "fill": fill,
            "fill-opacity": _fmt(opacity),
            "stroke": color,
            "stroke-width": _fmt(self.stroke),
        })

    def polyline(self, parent: ET.Element, points, color: str) -> ET.Element:
        return ET.SubElement(parent, "polyline", {
            "points": _points_attr(points),
            "fill": "none",
            "stroke": color,
            "stroke-width": _fmt(self.stroke),
        })

    def dot(self, parent: ET.Element, p, color: str) -> ET.Element:
        return ET.SubElement(parent, "circle", {
            "cx": _fmt(p[0]),
            "cy": _fmt(p[1]),
            "r": _fmt(2.5 * self.stroke),
            "fill": color,
        })

    def to_string(self) -> str:
        body = ET.tostring(self.root, encoding="unicode")
        return '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n' + body + "\n"


def render_svg(
    P: Polygon,
    layer: str = "center",
    cover: Optional[Cover] = None,
    center: Optional[CenterResult] = None,
) -> str:
    """
    渲染多边形及所选图层

    Args:
        P: 多边形
        layer: "cover"（按来源着色的三角形）、"hourglasses"（沙漏与墙）或 "center"（中心与到最远顶点的路径）
        cover: layer 为 cover / hourglasses 时需要
        center: layer 为 center 时需要

    Returns:
        SVG 文本
    """
    canvas = SvgCanvas(P)
    if layer == "cover":
        if cover is None:
            raise ValueError("cover 图层需要覆盖")
        g = canvas.group("cover")
        for t, prov in zip(cover.triangles, cover.provenance):
            color = LAYER_COLORS[prov.kind]
            canvas.polygon(g, t.corners, color, fill=color, opacity=0.25)
    elif layer == "hourglasses":
        if cover is None or cover.hourglasses is None:
            raise ValueError("hourglasses 图层需要带结构的覆盖")
        g = canvas.group("hourglasses")
        for h in cover.hourglasses:
            canvas.polygon(g, hourglass_ring(h), LAYER_COLORS["hourglass"], fill=LAYER_COLORS["hourglass"], opacity=0.15)
            canvas.polyline(g, h.wall_1.points, LAYER_COLORS["wall"])
            canvas.polyline(g, h.wall_2.points, LAYER_COLORS["wall"])
    elif layer == "center":
        if center is None:
            raise ValueError("center 图层需要中心")
        g = canvas.group("paths")
        for path in farthest_paths(P, center):
            canvas.polyline(g, path.points, LAYER_COLORS["path"])
        canvas.dot(canvas.group("center"), center.point, LAYER_COLORS["center"])
    else:
        raise ValueError(f"未知图层: {layer}")

    canvas.polygon(canvas.group("polygon"), P.vertices, LAYER_COLORS["polygon"])
    logger.debug(f"SVG 渲染完成: 图层 {layer}")
    return canvas.to_string()


def write_svg(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info(f"已写入 SVG: {path}")

