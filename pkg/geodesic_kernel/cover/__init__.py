"""
带顶点三角形覆盖与上包络
"""

from .triangles import NEG_INF, ApexedTriangle, PieceStats, TriangleArrays, VertexLabels, apex_value
from .hourglass_cover import cover_hourglass, vertex_labels
from .funnel_cover import cover_chain_edge, cover_funnel
from .envelope import envelope
from .builder import Cover, CoverStats, Provenance, build_cover

__all__ = [
    'NEG_INF',
    'ApexedTriangle',
    'Cover',
    'CoverStats',
    'PieceStats',
    'Provenance',
    'TriangleArrays',
    'VertexLabels',
    'apex_value',
    'build_cover',
    'cover_chain_edge',
    'cover_funnel',
    'cover_hourglass',
    'envelope',
    'vertex_labels',
]
