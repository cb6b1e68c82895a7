"""
独立预言机：只用于校验，不参与中心计算
"""

from .brute_force import (
    BruteForceCenter,
    brute_force_center,
    farthest_value,
    vertex_distance_matrix,
    visibility_distances,
    visibility_matrix,
)
from .mec import Circle, minimum_enclosing_circle

__all__ = [
    'BruteForceCenter',
    'Circle',
    'brute_force_center',
    'farthest_value',
    'minimum_enclosing_circle',
    'vertex_distance_matrix',
    'visibility_distances',
    'visibility_matrix',
]
