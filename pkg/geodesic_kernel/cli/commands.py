"""
命令实现

每个命令接收校验后的参数模型，返回 CommandResponse；data 会以 JSON 写到 stdout。
"""
import logging
import math
from typing import Optional

from pydantic import Field

from ..cache import CoverCache
from ..config import RunConfig, default_cache_dir
from ..cover import Cover, build_cover
from ..errors import RootOutside
from ..geometry import Polygon, load_polygon
from ..oracles import brute_force_center
from ..paths import build_spt, geodesic_path
from ..search import geodesic_center, geodesic_diameter
from .registry import CommandResponse, registry
from .render import render_svg, write_svg

logger = logging.getLogger(__name__)


class PathParams(RunConfig):
    """path 命令参数模型"""
    x1: float = Field(..., description="起点 x")
    y1: float = Field(..., description="起点 y")
    x2: float = Field(..., description="终点 x")
    y2: float = Field(..., description="终点 y")


class SptParams(RunConfig):
    """spt 命令参数模型"""
    vertex: int = Field(..., description="根顶点下标")


class CoverParams(RunConfig):
    """cover 命令参数模型"""
    stats: bool = Field(False, description="输出覆盖统计")


def _cover_for(P: Polygon, params: RunConfig, need_structure: bool = False) -> Cover:
    """构建覆盖；配置了缓存目录时先查缓存（缓存中没有沙漏等结构）"""
    cache_dir = params.cache_dir or default_cache_dir()
    if cache_dir is None:
        return build_cover(P, threads=params.threads)
    cache = CoverCache(cache_dir)
    if not need_structure:
        cached = cache.get_cover(P)
        if cached is not None:
            return cached
    cover = build_cover(P, threads=params.threads)
    cache.store_cover(P, cover)
    return cover


def _center(P: Polygon, params: RunConfig, cover: Optional[Cover] = None):
    return geodesic_center(
        P,
        settings=params.search,
        seed=params.seed,
        threads=params.threads,
        audit=params.audit or None,
        cover=cover or _cover_for(P, params),
    )


@registry.register_command(name="center", description="计算测地中心与半径", param_model=RunConfig)
def center_command(params: RunConfig) -> CommandResponse:
    P = load_polygon(params.input_path)
    result = _center(P, params)
    if params.svg_path:
        write_svg(params.svg_path, render_svg(P, "center", center=result))
    return CommandResponse.from_result(True, "测地中心计算完成", data=result.to_dict())


@registry.register_command(name="diameter", description="计算测地直径（顶点对）", param_model=RunConfig)
def diameter_command(params: RunConfig) -> CommandResponse:
    P = load_polygon(params.input_path)
    result = geodesic_diameter(P, threads=params.threads)
    return CommandResponse.from_result(True, "测地直径计算完成", data=result.to_dict(P))


@registry.register_command(name="path", description="两点间的测地路径", param_model=PathParams)
def path_command(params: PathParams) -> CommandResponse:
    P = load_polygon(params.input_path)
    path = geodesic_path(P, (params.x1, params.y1), (params.x2, params.y2))
    data = {"path": [[p[0], p[1]] for p in path.points], "length": path.length}
    return CommandResponse.from_result(True, "测地路径计算完成", data=data)


@registry.register_command(name="spt", description="以顶点为根的最短路径树", param_model=SptParams)
def spt_command(params: SptParams) -> CommandResponse:
    P = load_polygon(params.input_path)
    if not 0 <= params.vertex < P.n:
        raise RootOutside(f"顶点下标 {params.vertex} 超出范围 [0, {P.n})")
    T = build_spt(P, P[params.vertex])
    data = {
        "root": params.vertex,
        "parent": [int(p) for p in T.parent[:P.n]],
        "dist": [float(d) for d in T.dist[:P.n]],
    }
    return CommandResponse.from_result(True, "最短路径树构建完成", data=data)


@registry.register_command(name="cover", description="构建带顶点三角形覆盖", param_model=CoverParams)
def cover_command(params: CoverParams) -> CommandResponse:
    P = load_polygon(params.input_path)
    cover = _cover_for(P, params)
    if params.stats:
        data = cover.stats.to_dict()
    else:
        data = {"n": P.n, "num_triangles": len(cover)}
    return CommandResponse.from_result(True, "覆盖构建完成", data=data)


@registry.register_command(name="oracle", description="暴力预言机与测地中心对比", param_model=RunConfig)
def oracle_command(params: RunConfig) -> CommandResponse:
    P = load_polygon(params.input_path)
    brute = brute_force_center(P, grid=params.grid)
    result = _center(P, params)
    data = {
        "oracle": {"center": [brute.point[0], brute.point[1]], "radius": brute.radius},
        "center": result.to_dict(),
        "discrepancy": {
            "position": math.dist(brute.point, result.point),
            "radius": abs(brute.radius - result.radius),
        },
    }
    return CommandResponse.from_result(True, "预言机对比完成", data=data)


@registry.register_command(name="render", description="渲染多边形及图层为 SVG", param_model=RunConfig)
def render_command(params: RunConfig) -> CommandResponse:
    P = load_polygon(params.input_path)
    if not params.svg_path:
        return CommandResponse.from_result(False, "InvalidInput: render 需要 --svg 输出路径", exit_code=1)
    cover = _cover_for(P, params, need_structure=params.layer == "hourglasses")
    result = _center(P, params, cover) if params.layer == "center" else None
    write_svg(params.svg_path, render_svg(P, params.layer, cover=cover, center=result))
    return CommandResponse.from_result(True, "渲染完成", data={"svg": params.svg_path, "layer": params.layer})
