"""
效用函数的闭式微积分
U、U'、U''、(U')^{-1}、绝对风险厌恶，以及风险厌恶程度比较
"""
import math
from typing import Callable, Tuple, Union

import numpy as np

from src.utils.error_handler import DomainViolationError, InvalidParameterError
from .models import RiskComparison, UtilityDomain, UtilityKind, UtilitySpec

Number = Union[float, np.ndarray]


def _as_array(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


def _out(values: np.ndarray, like) -> Number:
    return float(values) if np.ndim(like) == 0 else values


def _check_domain(u: UtilitySpec, x: np.ndarray) -> None:
    if not np.all(np.isfinite(x)):
        raise DomainViolationError(f"{u.label()} 的自变量必须有限")
    if u.domain is UtilityDomain.POSITIVE_HALFLINE and np.any(x <= 0):
        raise DomainViolationError(f"{u.label()} 只在正半轴上有定义: x={x.min() if x.ndim else float(x)}")


def evaluate(u: UtilitySpec, x: Number) -> Number:
    """U(x)"""
    xs = _as_array(x)
    _check_domain(u, xs)
    if u.kind is UtilityKind.POWER:
        values = xs ** (1.0 - u.p) / (1.0 - u.p)
    elif u.kind is UtilityKind.LOG:
        values = np.log(xs)
    else:
        values = -np.exp(-u.gamma * xs)
    return _out(values, x)


def marginal(u: UtilitySpec, x: Number) -> Number:
    """U'(x)"""
    xs = _as_array(x)
    _check_domain(u, xs)
    if u.kind is UtilityKind.POWER:
        values = xs ** (-u.p)
    elif u.kind is UtilityKind.LOG:
        values = 1.0 / xs
    else:
        values = u.gamma * np.exp(-u.gamma * xs)
    return _out(values, x)


def second_derivative(u: UtilitySpec, x: Number) -> Number:
    """U''(x)"""
    xs = _as_array(x)
    _check_domain(u, xs)
    if u.kind is UtilityKind.POWER:
        values = -u.p * xs ** (-u.p - 1.0)
    elif u.kind is UtilityKind.LOG:
        values = -1.0 / xs ** 2
    else:
        values = -u.gamma ** 2 * np.exp(-u.gamma * xs)
    return _out(values, x)


def inverse_marginal(u: UtilitySpec, y: Number) -> Number:
    """
    (U')^{-1}(y)，y > 0

    Raises:
        DomainViolationError: y ≤ 0 或非有限
    """
    ys = _as_array(y)
    if not np.all(np.isfinite(ys)) or np.any(ys <= 0):
        raise DomainViolationError(f"边际效用的逆只对正数定义: y={y}")
    if u.kind is UtilityKind.POWER:
        values = ys ** (-1.0 / u.p)
    elif u.kind is UtilityKind.LOG:
        values = 1.0 / ys
    else:
        values = -np.log(ys / u.gamma) / u.gamma
    return _out(values, y)


def ara(u: UtilitySpec, x: Number) -> Number:
    """绝对风险厌恶 −U''(x)/U'(x)"""
    xs = _as_array(x)
    _check_domain(u, xs)
    if u.kind is UtilityKind.POWER:
        values = u.p / xs
    elif u.kind is UtilityKind.LOG:
        values = 1.0 / xs
    else:
        values = np.full_like(xs, u.gamma)
    return _out(values, x)


def more_risk_averse(u_more: UtilitySpec, u_less: UtilitySpec) -> RiskComparison:
    """
    ARA 逐点比较

    幂/对数族之间比较 p（对数视为 p=1），指数族之间比较 γ；
    p/x 与常数 γ 在 (0,∞) 上必然交叉，跨族比较总是不可比。
    """
    rra_more = u_more.relative_risk_aversion
    rra_less = u_less.relative_risk_aversion
    if rra_more is not None and rra_less is not None:
        return RiskComparison.MORE if rra_more >= rra_less else RiskComparison.LESS
    if rra_more is None and rra_less is None:
        return RiskComparison.MORE if u_more.gamma >= u_less.gamma else RiskComparison.LESS
    return RiskComparison.INCOMPARABLE


def scalar_functions(u: UtilitySpec) -> Tuple[Callable[[float], float], Callable[[float], float], Callable[[float], float]]:
    """
    返回 (U, U', U'') 的纯 Python 标量闭包，不做定义域检查

    供逐节点一维优化使用，避免在内层循环中构造 numpy 数组。
    """
    if u.kind is UtilityKind.POWER:
        p = u.p
        q = 1.0 - p
        return (
            lambda x: x ** q / q,
            lambda x: x ** (-p),
            lambda x: -p * x ** (-p - 1.0),
        )
    if u.kind is UtilityKind.LOG:
        return (math.log, lambda x: 1.0 / x, lambda x: -1.0 / (x * x))
    if u.kind is UtilityKind.EXPONENTIAL:
        g = u.gamma
        return (
            lambda x: -math.exp(-g * x),
            lambda x: g * math.exp(-g * x),
            lambda x: -g * g * math.exp(-g * x),
        )
    raise InvalidParameterError(f"未知效用函数族: {u.kind}")


__all__ = [
    "evaluate",
    "marginal",
    "second_derivative",
    "inverse_marginal",
    "ara",
    "more_risk_averse",
    "scalar_functions",
]
