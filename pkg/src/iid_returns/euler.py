"""
Euler 乘积的精确分布
Π_{i=1}^N (1 + π(R_i − b))，R_i 独立同分布；逐期与单因子分布做独立乘积并合并相同取值。
"""
import logging
from typing import Optional

from config.dominance_settings import settings
from src.distributions.discrete import DiscreteDist, product_independent
from src.stochastic_order.checks import check_convex
from src.stochastic_order.models import OrderVerdict
from src.utils.error_handler import EnumerationCapExceededError, InvalidParameterError, PreconditionError
from .models import IncrementDist

logger = logging.getLogger(__name__)


def euler_factor_dist(inc: IncrementDist, pi: float, centered: bool = True) -> DiscreteDist:
    """单个因子 1 + π(R − b)（centered=False 时为 1 + πR）的分布"""
    shift = inc.drift if centered else 0.0
    return DiscreteDist.from_atoms(1.0 + pi * (inc.returns - shift), inc.probs)


def euler_product_dist(
    inc: IncrementDist,
    pi: float,
    N: int,
    centered: bool = True,
    cap: Optional[int] = None,
) -> DiscreteDist:
    """
    N 期乘积的精确分布

    因子允许为负，不做可行性限制。centered=True 时均值为1；
    centered=False 时均值为 (1+πb)^N。

    Raises:
        InvalidParameterError: N < 0
        EnumerationCapExceededError: |支撑|^N 超过枚举上限
    """
    cap = settings.enumeration_cap if cap is None else cap
    if N < 0:
        raise InvalidParameterError(f"期数不能为负: {N}")
    if N == 0:
        return DiscreteDist.point_mass(1.0)
    outcomes = len(inc.law) ** N
    if outcomes > cap:
        raise EnumerationCapExceededError(f"枚举 {outcomes} 个结果超过上限 {cap}", atoms=outcomes, cap=cap)

    factor = euler_factor_dist(inc, pi, centered)
    result = factor
    for _ in range(N - 1):
        result = product_independent(result, factor)
    logger.debug(f"Euler 乘积: π={pi}, N={N}, {outcomes} 个结果合并为 {len(result)} 个原子")
    return result


def check_euler_order(
    inc: IncrementDist,
    pi_more: float,
    pi_less: float,
    N: int,
    tol: Optional[float] = None,
) -> OrderVerdict:
    """
    比较两个比例下中心化 Euler 乘积的凸序

    前提：π_more 与 π_less 同号（允许 π_more = 0）且 |π_more| ≤ |π_less|。

    Raises:
        PreconditionError: 前提不成立，此时不断言任何结论
        EnumerationCapExceededError: 精确枚举不可行
    """
    if pi_more * pi_less < 0:
        raise PreconditionError(f"比例符号不同: π_more={pi_more}, π_less={pi_less}")
    if abs(pi_more) > abs(pi_less) * (1.0 + 1e-12):
        raise PreconditionError(f"要求 |π_more| ≤ |π_less|: {pi_more}, {pi_less}")

    X = euler_product_dist(inc, pi_more, N)
    Y = euler_product_dist(inc, pi_less, N)
    return check_convex(X, Y, tol)


__all__ = ["euler_factor_dist", "euler_product_dist", "check_euler_order"]
