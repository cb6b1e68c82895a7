"""
命令行前端
"""

from .registry import CommandRegistry, CommandResponse, registry
from .render import render_svg, write_svg
from .main import build_parser, dumps, run

__all__ = [
    'CommandRegistry',
    'CommandResponse',
    'build_parser',
    'dumps',
    'registry',
    'render_svg',
    'run',
    'write_svg',
]
