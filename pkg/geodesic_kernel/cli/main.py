"""
命令行入口

用法示例:
    geodesic center fixtures/square.json --svg out.svg
    geodesic path fixtures/L.json 0.5 1.5 1.5 0.5
    geodesic oracle fixtures/square.json --grid 64

stdout 只输出 JSON；日志与错误信息写到 stderr。
退出码: 0 成功，1 输入不合法，2 内部不变量失败。
"""
import argparse
import json
import logging
import math
import sys
from typing import Any, Dict, List, Optional

from ..config import load_environment
from ..errors import InvalidInput
from . import commands  # noqa: F401  注册全部命令
from .registry import CommandResponse, registry

logger = logging.getLogger(__name__)

SIGNIFICANT_DIGITS = 7


class _Parser(argparse.ArgumentParser):
    """参数错误抛出 InvalidInput，而不是直接退出"""

    def error(self, message: str):
        raise InvalidInput(message)


def _round(value: Any) -> Any:
    """浮点数保留 7 位有效数字，便于快照比对"""
    if isinstance(value, float):
        if not math.isfinite(value):
            return None
        return float(f"{value:.{SIGNIFICANT_DIGITS}g}")
    if isinstance(value, dict):
        return {k: _round(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round(v) for v in value]
    return value


def dumps(data: Any) -> str:
    return json.dumps(_round(data), sort_keys=True, separators=(",", ":"))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("input_path", help="多边形 JSON 文件")
    common.add_argument("--seed", type=int, default=0, help="随机种子")
    common.add_argument("--threads", type=int, default=1, help="并行线程数")
    common.add_argument("--tolerance", type=float, default=1e-9, help="距离容差")
    common.add_argument("--cache-dir", dest="cache_dir", default=None, help="覆盖缓存目录")
    common.add_argument("--audit", action="store_true", help="审计模式")

    parser = _Parser(prog="geodesic", description="简单多边形的测地中心与相关结构")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    descriptions = {c["name"]: c["description"] for c in registry.get_available_commands()}

    def add(name: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], help=descriptions.get(name), description=descriptions.get(name))

    p = add("center")
    p.add_argument("--svg", dest="svg_path", default=None, help="SVG 输出路径")
    add("diameter")
    p = add("path")
    for name in ("x1", "y1", "x2", "y2"):
        p.add_argument(name, type=float)
    p = add("spt")
    p.add_argument("vertex", type=int, help="根顶点下标")
    p = add("cover")
    p.add_argument("--stats", action="store_true", help="输出覆盖统计")
    p = add("oracle")
    p.add_argument("--grid", type=int, default=256, help="网格分辨率")
    p = add("render")
    p.add_argument("--svg", dest="svg_path", required=True, help="SVG 输出路径")
    p.add_argument("--layer", choices=["cover", "hourglasses", "center"], default="center", help="图层")
    return parser


def _respond(response: CommandResponse, out, err) -> int:
    if response.success:
        out.write(dumps(response.data) + "\n")
    else:
        err.write(response.message + "\n")
    return response.exit_code


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    """
    执行一次命令

    Args:
        argv: 命令行参数（不含程序名）
        out / err: 输出流，默认 sys.stdout / sys.stderr

    Returns:
        退出码
    """
    out = out or sys.stdout
    err = err or sys.stderr
    load_environment()
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    try:
        args = build_parser().parse_args(argv)
    except InvalidInput as e:
        return _respond(CommandResponse.from_result(False, str(e), exit_code=e.exit_code), out, err)
    if args.command is None:
        return _respond(CommandResponse.from_result(False, "InvalidInput: 缺少子命令", exit_code=1), out, err)

    params: Dict[str, Any] = {k: v for k, v in vars(args).items() if v is not None}
    logger.debug(f"执行命令 {args.command}: {params}")
    try:
        response = registry.dispatch(args.command, params)
    except OSError as e:
        response = CommandResponse.from_result(False, f"InvalidInput: 无法读取输入: {e}", exit_code=1)
    return _respond(response, out, err)


def main() -> None:
    sys.exit(run())
