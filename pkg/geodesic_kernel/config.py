"""
运行配置

命令行参数与环境变量（.env）统一在这里校验。环境变量：
    GEODESIC_CHECK=1        开启审计模式（每轮搜索校验中心仍在单元内）
    GEODESIC_CACHE_DIR      覆盖缓存目录
    GEODESIC_LOG_LEVEL      日志级别，默认 WARNING
"""
import logging
import os
from typing import Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, field_validator

logger = logging.getLogger(__name__)

# 全局距离容差
EPS_D = 1e-9


class SearchSettings(BaseModel):
    """
    剪枝搜索参数

    属性:
        eps: epsilon 网参数
        base_case: m_R 不超过该值时停止剪枝
        max_retries: 收缩失败时的重采样次数
        fallback_subset: 兜底网使用的三角形子集大小
        net_batch: 每次分解插入的网弦数量
        active_tolerance: 收集活动梯度时的值容差
        golden_tolerance: 黄金分割的参数精度
        region_diameter: 二分求解的终止直径
    """
    eps: float = Field(1.0 / 12.0, description="epsilon 网参数", gt=0.0, lt=1.0)
    base_case: int = Field(32, description="基础情形阈值", ge=1)
    max_retries: int = Field(5, description="最大重试次数", ge=0)
    fallback_subset: int = Field(32, description="兜底网三角形子集大小", ge=1)
    net_batch: int = Field(2, description="每批插入的网弦数", ge=1)
    active_tolerance: float = Field(EPS_D, description="活动集容差", gt=0.0)
    golden_tolerance: float = Field(1e-12, description="黄金分割精度", gt=0.0)
    region_diameter: float = Field(1e-10, description="区域直径终止阈值", gt=0.0)
    max_bisections: int = Field(400, description="二分求解最大步数", ge=1)


class RunConfig(BaseModel):
    """
    命令行运行配置

    属性:
        command: 子命令名称
        input_path: 多边形 JSON 文件
        tolerance: 距离容差
        seed: 随机种子，所有随机性都从这里派生
        threads: 并行线程数
        svg_path: SVG 输出路径
        grid: 暴力预言机的网格分辨率
        layer: 渲染图层
        cache_dir: 覆盖缓存目录
        audit: 是否开启审计模式
    """
    command: str = Field(..., description="子命令")
    input_path: str = Field(..., description="输入多边形文件")
    tolerance: float = Field(EPS_D, description="距离容差")
    seed: int = Field(0, description="随机种子")
    threads: int = Field(1, description="并行线程数", ge=1)
    svg_path: Optional[str] = Field(None, description="SVG 输出路径（可选）")
    grid: int = Field(256, description="暴力预言机网格分辨率")
    layer: Literal["cover", "hourglasses", "center"] = Field("center", description="渲染图层")
    cache_dir: Optional[str] = Field(None, description="覆盖缓存目录（可选）")
    audit: bool = Field(False, description="审计模式")
    search: SearchSettings = Field(default_factory=SearchSettings, description="剪枝搜索参数")

    @field_validator("tolerance")
    @classmethod
    def _positive_tolerance(cls, value: float) -> float:
        if not value > 0.0:
            raise ValueError("tolerance 必须为正数")
        return value

    @field_validator("grid")
    @classmethod
    def _grid_floor(cls, value: int) -> int:
        if value < 16:
            raise ValueError("grid 不能小于 16")
        return value


def load_environment() -> None:
    """加载 .env 并按 GEODESIC_LOG_LEVEL 设置日志级别"""
    load_dotenv()
    level = os.getenv("GEODESIC_LOG_LEVEL", "WARNING").upper()
    logging.getLogger("geodesic_kernel").setLevel(getattr(logging, level, logging.WARNING))


def audit_enabled() -> bool:
    """GEODESIC_CHECK=1 时开启审计"""
    return os.getenv("GEODESIC_CHECK", "0").strip() == "1"


def default_cache_dir() -> Optional[str]:
    return os.getenv("GEODESIC_CACHE_DIR") or None
