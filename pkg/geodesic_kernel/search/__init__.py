"""
弦预言机、剪枝搜索与测地中心
"""

from .hull import min_norm_in_hull
from .descent import Descent, LocalCones, descent_rate
from .regions import Verdict
from .oracle import RestrictedFn, SideDecision, min_on_chord, restrict_to_chord, side_of_center
from .planes import Constraint, SeparatingPlane, constraint_value, feasible, separating_plane
from .cells import (
    Center,
    SearchCell,
    TriangleIndex,
    candidate_chords,
    decompose_cell,
    epsilon_net_chords,
    locate_cell,
    prune_triangles,
)
from .prune_search import FinalRegion, IterationRecord, SearchOutcome, SearchTrace, search
from .solver import solve_in_region
from .center import (
    CERTIFICATE_LIMIT,
    CenterResult,
    DiameterResult,
    geodesic_center,
    geodesic_diameter,
    optimality_certificate,
)

__all__ = [
    'CERTIFICATE_LIMIT',
    'Center',
    'CenterResult',
    'Constraint',
    'DiameterResult',
    'Descent',
    'FinalRegion',
    'IterationRecord',
    'LocalCones',
    'RestrictedFn',
    'SearchCell',
    'SearchOutcome',
    'SearchTrace',
    'SeparatingPlane',
    'SideDecision',
    'TriangleIndex',
    'Verdict',
    'candidate_chords',
    'constraint_value',
    'decompose_cell',
    'descent_rate',
    'epsilon_net_chords',
    'feasible',
    'geodesic_center',
    'geodesic_diameter',
    'locate_cell',
    'min_norm_in_hull',
    'min_on_chord',
    'optimality_certificate',
    'prune_triangles',
    'restrict_to_chord',
    'search',
    'separating_plane',
    'side_of_center',
    'solve_in_region',
]
