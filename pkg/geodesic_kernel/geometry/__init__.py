"""
多边形基础模块
"""

from .predicates import Orientation, Point, orient, orientation, signed_area
from .polygon import (
    BoundaryPos,
    Chord,
    Polygon,
    chord_split,
    contains,
    locate_on_boundary,
    make_chord,
    ray_shoot,
    segment_inside,
    validate_polygon,
)
from .triangulation import Diagonalization, triangulate
from .generators import random_convex_polygon, random_simple_polygon, regular_polygon
from .io import load_polygon, polygon_from_dict, polygon_to_dict, save_polygon

__all__ = [
    'BoundaryPos',
    'Chord',
    'Diagonalization',
    'Orientation',
    'Point',
    'Polygon',
    'chord_split',
    'contains',
    'load_polygon',
    'locate_on_boundary',
    'make_chord',
    'orient',
    'orientation',
    'polygon_from_dict',
    'polygon_to_dict',
    'random_convex_polygon',
    'random_simple_polygon',
    'ray_shoot',
    'regular_polygon',
    'save_polygon',
    'segment_inside',
    'signed_area',
    'triangulate',
    'validate_polygon',
]
