"""
覆盖缓存

覆盖只依赖多边形本身，按多边形规范 JSON 的 md5 存成 <key>.json；
metadata.json 记录每个键的顶点数、三角形数、格式版本和写入次数。
"""
import hashlib
import json
import logging
import os
import time
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field, ValidationError

from ..cover import Cover
from ..cover.builder import COVER_FORMAT
from ..geometry import Polygon
from ..geometry.io import canonical_json

logger = logging.getLogger(__name__)

METADATA_FILE = "metadata.json"


class CacheEntry(BaseModel):
    """metadata.json 中的一条记录"""
    n: int = Field(..., description="多边形顶点数")
    triangle_count: int = Field(..., description="覆盖三角形数")
    format: int = Field(COVER_FORMAT, description="覆盖序列化格式")
    timestamp: float = Field(default_factory=time.time, description="写入时间")
    version: int = Field(1, description="同一多边形被写入的次数")


class CoverCache:
    """覆盖缓存：内存一层，目录一层"""

    def __init__(self, cache_dir: str = "cover_cache"):
        """
        Args:
            cache_dir: 缓存目录，不存在时创建
        """
        self.cache_dir = cache_dir
        self.cache: Dict[str, Cover] = {}
        self.metadata: Dict[str, CacheEntry] = {}
        os.makedirs(cache_dir, exist_ok=True)
        self.metadata = self._read_index()

    @property
    def index_path(self) -> str:
        return os.path.join(self.cache_dir, METADATA_FILE)

    def _read_index(self) -> Dict[str, CacheEntry]:
        if not os.path.exists(self.index_path):
            return {}
        try:
            with open(self.index_path, "r", encoding="utf-8") as f:
                raw = json.load(f)
            index = {key: CacheEntry.model_validate(entry) for key, entry in raw.items()}
        except (OSError, ValueError, ValidationError, AttributeError) as e:
            logger.error(f"缓存索引损坏，从空索引开始: {e}")
            return {}
        logger.info(f"缓存索引共 {len(index)} 条")
        return index

    def _write_index(self) -> None:
        payload = {key: entry.model_dump() for key, entry in self.metadata.items()}
        try:
            with open(self.index_path, "w", encoding="utf-8") as f:
                json.dump(payload, f, indent=2, sort_keys=True)
        except OSError as e:
            logger.error(f"写缓存索引失败: {e}")

    @staticmethod
    def cache_key(P: Polygon) -> str:
        """多边形规范 JSON 的 md5；两种环向得到同一个键"""
        return hashlib.md5(canonical_json(P).encode("utf-8")).hexdigest()

    def entry_path(self, key: str) -> str:
        return os.path.join(self.cache_dir, f"{key}.json")

    def get_cover(self, P: Polygon) -> Optional[Cover]:
        """
        取出多边形的覆盖

        Returns:
            Cover；未命中或条目损坏时为 None
        """
        key = self.cache_key(P)
        hit = self.cache.get(key)
        if hit is not None:
            logger.debug(f"内存命中 {key}")
            return hit
        path = self.entry_path(key)
        if not os.path.exists(path):
            return None
        try:
            with open(path, "r", encoding="utf-8") as f:
                cover = Cover.from_dict(P, json.load(f)["cover"])
        except (OSError, ValueError, KeyError, TypeError) as e:
            logger.error(f"缓存条目 {key} 无法读取，已忽略: {e}")
            return None
        self.cache[key] = cover
        logger.info(f"文件命中 {key}: {len(cover)} 个三角形")
        return cover

    def store_cover(self, P: Polygon, cover: Cover) -> None:
        """写入内存、条目文件与索引"""
        key = self.cache_key(P)
        self.cache[key] = cover
        previous = self.metadata.get(key)
        entry = CacheEntry(
            n=P.n,
            triangle_count=len(cover),
            version=previous.version + 1 if previous else 1,
        )
        self.metadata[key] = entry
        self._write_index()
        try:
            with open(self.entry_path(key), "w", encoding="utf-8") as f:
                json.dump({"metadata": entry.model_dump(), "cover": cover.to_dict()}, f, ensure_ascii=False)
        except OSError as e:
            logger.error(f"写缓存条目 {key} 失败: {e}")
            return
        logger.info(f"已缓存 {key}: {len(cover)} 个三角形（第 {entry.version} 次写入）")

    def get_cache_info(self, P: Polygon) -> Dict[str, Any]:
        entry = self.metadata.get(self.cache_key(P))
        return entry.model_dump() if entry else {}

    def _remove(self, key: str) -> None:
        self.cache.pop(key, None)
        self.metadata.pop(key, None)
        path = self.entry_path(key)
        if os.path.exists(path):
            try:
                os.remove(path)
            except OSError as e:
                logger.error(f"删除缓存条目 {key} 失败: {e}")

    def clear_cache(self, P: Optional[Polygon] = None) -> None:
        """
        清除缓存

        Args:
            P: 指定时只清除该多边形；否则清空目录中的全部条目
        """
        if P is not None:
            key = self.cache_key(P)
            self._remove(key)
            logger.info(f"已清除缓存 {key}")
        else:
            keys = set(self.metadata) | {
                name[:-len(".json")]
                for name in os.listdir(self.cache_dir)
                if name.endswith(".json") and name != METADATA_FILE
            }
            for key in keys:
                self._remove(key)
            logger.info(f"已清除全部缓存（{len(keys)} 条）")
        self._write_index()
