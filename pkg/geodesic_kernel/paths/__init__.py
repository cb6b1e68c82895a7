"""
测地最短路径模块
"""

from .lca import EulerLCA
from .spt import GeodesicPath, ShortestPathTree, build_spt, geodesic_distance, geodesic_path, is_taut
from .between import WallStats, check_cyclic_order, foreign_edges, path_between

__all__ = [
    'EulerLCA',
    'GeodesicPath',
    'ShortestPathTree',
    'WallStats',
    'build_spt',
    'check_cyclic_order',
    'foreign_edges',
    'geodesic_distance',
    'geodesic_path',
    'is_taut',
    'path_between',
]
