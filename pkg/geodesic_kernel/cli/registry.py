"""
命令注册系统

命令用装饰器注册到 CommandRegistry，参数由 pydantic 模型校验；
分发时把库异常映射成带退出码的 CommandResponse。
"""
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Type

from pydantic import BaseModel, ValidationError

from ..errors import GeodesicError, InvalidInput

logger = logging.getLogger(__name__)


@dataclass
class CommandResponse:
    """
    命令响应数据类

    属性:
        success: 命令是否成功
        message: 结果消息（失败时写到 stderr）
        data: 输出到 stdout 的 JSON 数据
        exit_code: 进程退出码
    """
    success: bool
    message: str
    data: Optional[Any] = None
    exit_code: int = 0

    @classmethod
    def from_result(cls, success: bool, message: str, data: Any = None,
                    exit_code: Optional[int] = None) -> 'CommandResponse':
        """创建CommandResponse实例的工厂方法"""
        if exit_code is None:
            exit_code = 0 if success else 2
        return cls(success=success, message=str(message), data=data, exit_code=exit_code)


@dataclass
class RegisteredCommand:
    name: str
    description: str
    func: Callable[[BaseModel], CommandResponse]
    param_model: Optional[Type[BaseModel]]


class CommandRegistry:
    """命令注册表"""

    def __init__(self, exclude_commands: Optional[List[str]] = None):
        """
        初始化命令注册表

        参数:
            exclude_commands: 要排除的命令列表
        """
        self.exclude_commands = exclude_commands if exclude_commands is not None else []
        self.commands: Dict[str, RegisteredCommand] = {}

    def register_command(self, name: str, description: str, param_model: Optional[Type[BaseModel]] = None):
        """
        注册命令的装饰器

        参数:
            name: 命令的唯一标识名称
            description: 命令的描述信息
            param_model: 参数模型类

        示例:
            @registry.register_command(name="center", description="计算测地中心", param_model=RunConfig)
            def center(params: RunConfig) -> CommandResponse:
                ...
        """
        def decorator(func: Callable):
            if name in self.exclude_commands:
                logger.debug(f"命令 {name} 已被排除")
                return func
            if name in self.commands:
                logger.warning(f"命令 {name} 被重复注册，后者覆盖前者")
            self.commands[name] = RegisteredCommand(name, description, func, param_model)
            return func

        return decorator

    def get_available_commands(self) -> List[Dict[str, str]]:
        """
        获取所有可用命令的信息

        返回:
            包含命令信息的字典列表
        """
        return [
            {
                "name": name,
                "description": command.description,
                "parameters": str(command.param_model.model_json_schema()["properties"]) if command.param_model else "{}",
            }
            for name, command in self.commands.items()
        ]

    def dispatch(self, name: str, params: Dict[str, Any]) -> CommandResponse:
        """
        校验参数并执行命令

        参数校验失败与 InvalidInput 退出码为 1，InvariantFailure 为 2。
        """
        command = self.commands.get(name)
        if command is None:
            return CommandResponse.from_result(False, f"未知命令: {name}", exit_code=1)
        try:
            model = command.param_model.model_validate(params) if command.param_model else None
        except ValidationError as e:
            first = e.errors()[0]
            where = ".".join(str(p) for p in first.get("loc", ()))
            return CommandResponse.from_result(False, f"InvalidInput: 参数 {where} 不合法: {first.get('msg')}", exit_code=1)
        try:
            return command.func(model)
        except InvalidInput as e:
            logger.debug(f"命令 {name} 输入不合法: {e}")
            return CommandResponse.from_result(False, str(e), exit_code=e.exit_code)
        except GeodesicError as e:
            logger.error(f"命令 {name} 失败: {e}")
            return CommandResponse.from_result(False, str(e), exit_code=e.exit_code)


registry = CommandRegistry()
