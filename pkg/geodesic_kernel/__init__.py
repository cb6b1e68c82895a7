"""
geodesic_kernel: 简单多边形的测地中心

流水线: 最短路径树 → 最远邻与边界分解 → 过渡沙漏与漏斗 → 带顶点三角形覆盖
→ 弦预言机驱动的剪枝搜索 → 最终单元内二分求解。
"""

from .errors import GeodesicError, InvalidInput, InvariantFailure
from .config import RunConfig, SearchSettings
from .geometry import Polygon, load_polygon, validate_polygon
from .cover import Cover, build_cover
from .search import CenterResult, DiameterResult, geodesic_center, geodesic_diameter
from .paths import geodesic_distance, geodesic_path

__version__ = "0.1.0"

__all__ = [
    'CenterResult',
    'Cover',
    'DiameterResult',
    'GeodesicError',
    'InvalidInput',
    'InvariantFailure',
    'Polygon',
    'RunConfig',
    'SearchSettings',
    'build_cover',
    'geodesic_center',
    'geodesic_diameter',
    'geodesic_distance',
    'geodesic_path',
    'load_polygon',
    'validate_polygon',
]
