"""
覆盖缓存模块
"""

from .cover_cache import CacheEntry, CoverCache

__all__ = ['CacheEntry', 'CoverCache']
