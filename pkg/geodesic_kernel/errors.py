"""
几何内核异常定义

所有异常都继承自 GeodesicError，并分为两类：
1. InvalidInput: 输入不合法（命令行退出码 1）
2. InvariantFailure: 内部不变量被破坏（命令行退出码 2）
"""


class GeodesicError(Exception):
    """几何内核异常基类"""

    exit_code = 2

    def __init__(self, message: str = ""):
        super().__init__(message)
        self.message = message

    @property
    def name(self) -> str:
        return type(self).__name__

    def __str__(self) -> str:
        return f"{self.name}: {self.message}" if self.message else self.name


class InvalidInput(GeodesicError):
    """输入数据不合法"""

    exit_code = 1


class InvariantFailure(GeodesicError):
    """算法不变量失败"""

    exit_code = 2


# 多边形校验
class NotSimple(InvalidInput):
    pass


class TooFewVertices(InvalidInput):
    pass


class DuplicateVertex(InvalidInput):
    pass


class CollinearRun(InvalidInput):
    pass


# 射线与弦
class DegenerateRay(InvalidInput):
    pass


class ChordOnBoundary(InvalidInput):
    pass


# 最短路
class RootOutside(InvalidInput):
    pass


class PointOutside(InvalidInput):
    pass


class OrderViolation(InvalidInput):
    pass


# 分离平面
class IdenticalConstraints(InvalidInput):
    pass


class MissingHourglass(InvalidInput):
    pass


# 不变量失败
class NotOpen(InvariantFailure):
    pass


class DegenerateFarthestStructure(InvariantFailure):
    pass


class UncoveredChord(InvariantFailure):
    pass


class ApexAtQuery(InvariantFailure):
    pass


class InconsistentOracles(InvariantFailure):
    pass


class NoProgress(InvariantFailure):
    pass


class CellTooComplex(InvariantFailure):
    pass


class CertificateFailure(InvariantFailure):
    """返回的中心处仍有可行下降方向"""
