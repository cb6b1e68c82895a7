"""
边界分解、沙漏与漏斗
"""

from .farthest import BoundaryDecomposition, FarthestMap, TreeBank, all_farthest_neighbors, decompose_boundary
from .separators import SeparatingPathSet, separates, separating_paths
from .hourglass import (
    Hourglass,
    HourglassSet,
    bottom_chains_ordered,
    build_all_hourglasses,
    build_hourglass,
    hourglass_ring,
    hourglass_size,
    is_open,
)
from .funnel import Funnel, build_funnel, funnel_area, funnel_ring

__all__ = [
    'BoundaryDecomposition',
    'FarthestMap',
    'Funnel',
    'Hourglass',
    'HourglassSet',
    'SeparatingPathSet',
    'TreeBank',
    'all_farthest_neighbors',
    'bottom_chains_ordered',
    'build_all_hourglasses',
    'build_funnel',
    'build_hourglass',
    'decompose_boundary',
    'funnel_area',
    'funnel_ring',
    'hourglass_ring',
    'hourglass_size',
    'is_open',
    'separates',
    'separating_paths',
]
