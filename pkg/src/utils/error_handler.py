# src/utils/error_handler.py
"""
错误处理模块
"""
import json
import logging
from functools import wraps

from pydantic import ValidationError

logger = logging.getLogger(__name__)

# 参数非法或文件格式错误时的退出码
EXIT_INVALID_INPUT = 2


class DominanceError(Exception):
    """随机占优工具基础异常"""
    pass


class InvalidParameterError(DominanceError, ValueError):
    """参数超出允许范围"""
    pass


class InvalidDistributionError(DominanceError, ValueError):
    """离散分布不满足不变量"""
    pass


class DomainViolationError(DominanceError, ValueError):
    """效用函数定义域之外的取值"""
    pass


class InvalidTreeError(DominanceError, ValueError):
    """事件树结构缺陷（孤立节点、概率和、非正价格等）"""
    pass


class ArbitrageError(DominanceError):
    """单步套利，效用最大化问题无界"""

    def __init__(self, message: str, node_ids=None):
        super().__init__(message)
        self.node_ids = list(node_ids or [])


class IncompleteMarketError(DominanceError):
    """市场不完备，等价鞅测度不唯一"""

    def __init__(self, message: str, node_id=None):
        super().__init__(message)
        self.node_id = node_id


class ReplicationError(DominanceError):
    """终端财富无法复制"""
    pass


class BudgetBracketError(DominanceError):
    """预算方程无法在乘子区间内括住根"""
    pass


class InfeasibleCouplingError(DominanceError):
    """Strassen耦合不存在或线性规划残差过大"""

    def __init__(self, message: str, verdict=None, residual=None):
        super().__init__(message)
        self.verdict = verdict
        self.residual = residual


class EnumerationCapExceededError(DominanceError):
    """精确枚举的原子数超过上限，应改用蒙特卡洛"""

    def __init__(self, message: str, atoms: int = 0, cap: int = 0):
        super().__init__(message)
        self.atoms = atoms
        self.cap = cap


class PreconditionError(DominanceError, ValueError):
    """命题前提不成立，结论不被断言"""
    pass


class ConfigurationError(DominanceError, ValueError):
    """运行配置错误"""
    pass


def exit_code_on_error(func):
    """
    命令行错误处理装饰器

    功能：
    1. 捕获参数、文件与模型错误并记录日志
    2. 转换为退出码2，计算成功（无论判定结果）时透传命令的返回值
    """
    @wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (DominanceError, ValidationError, json.JSONDecodeError, OSError, ValueError) as e:
            error_type = type(e).__name__
            suggestions = {
                "FileNotFoundError": "检查输入文件路径",
                "JSONDecodeError": "检查JSON文件格式",
                "ValidationError": "检查输入字段与取值范围",
                "EnumerationCapExceededError": "提供 --seed 以切换到蒙特卡洛",
                "IncompleteMarketError": "不完备市场请使用 --method dp",
            }
            suggestion = suggestions.get(error_type, "查看详细日志")
            logger.error(f"{func.__name__} 失败 ({error_type}): {e}. 建议: {suggestion}")
            return EXIT_INVALID_INPUT
    return wrapper


__all__ = [
    "EXIT_INVALID_INPUT",
    "DominanceError",
    "InvalidParameterError",
    "InvalidDistributionError",
    "DomainViolationError",
    "InvalidTreeError",
    "ArbitrageError",
    "IncompleteMarketError",
    "ReplicationError",
    "BudgetBracketError",
    "InfeasibleCouplingError",
    "EnumerationCapExceededError",
    "PreconditionError",
    "ConfigurationError",
    "exit_code_on_error",
]
