"""
多边形 JSON 读写

格式: {"vertices": [[x, y], ...]}，写出时为逆时针。
"""
import json
import logging
from typing import Any, Dict

from ..errors import NotSimple
from .polygon import Polygon, validate_polygon

logger = logging.getLogger(__name__)


def polygon_from_dict(data: Dict[str, Any]) -> Polygon:
    vertices = data.get("vertices") if isinstance(data, dict) else None
    if not isinstance(vertices, list):
        raise NotSimple("JSON 缺少 vertices 列表")
    try:
        raw = [(float(x), float(y)) for x, y in vertices]
    except (TypeError, ValueError) as e:
        raise NotSimple(f"顶点格式错误: {e}")
    return validate_polygon(raw)


def polygon_to_dict(P: Polygon) -> Dict[str, Any]:
    return {"vertices": [[v.x, v.y] for v in P.vertices]}


def load_polygon(path: str) -> Polygon:
    """读取并校验多边形文件"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise NotSimple(f"无法解析 {path}: {e}")
    P = polygon_from_dict(data)
    logger.info(f"已加载多边形 {path}，共 {P.n} 个顶点")
    return P


def save_polygon(P: Polygon, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(polygon_to_dict(P), f, indent=2)


def canonical_json(P: Polygon) -> str:
    """缓存键使用的规范文本"""
    return json.dumps(polygon_to_dict(P), sort_keys=True, separators=(",", ":"))
