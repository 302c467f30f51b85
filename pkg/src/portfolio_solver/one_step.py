"""
单步最优化
h(c) = Σ_k w_k · U(base + c·m_k)
比例控制：base = 1，m_k 为收益率，c 限制在 1 + c·m_k > 0 的开区间；
数量控制：base = 0，m_k 为价格增量，c 取遍实数轴。
"""
import logging
import math
from typing import Sequence, Tuple

from config.dominance_settings import settings
from src.utility.calculus import scalar_functions
from src.utility.models import UtilitySpec
from src.utils.error_handler import ArbitrageError
from .models import ControlKind
from .scalar_search import (
    ScalarSearchResult,
    ScalarFunction,
    admissible_fraction_interval,
    expand_symmetric_bracket,
    maximize_on_interval,
)

logger = logging.getLogger(__name__)


def one_step_objective(
    u: UtilitySpec,
    weights: Sequence[float],
    moves: Sequence[float],
    base: float,
) -> Tuple[ScalarFunction, ScalarFunction, ScalarFunction]:
    """返回 (h, h', h'') 的标量闭包；定义域外 h 取 −inf，导数取 nan"""
    U, dU, d2U = scalar_functions(u)
    pairs = list(zip(weights, moves))

    def h(c: float) -> float:
        total = 0.0
        try:
            for w, m in pairs:
                x = base + c * m
                if base > 0 and x <= 0.0:
                    return -math.inf
                total += w * U(x)
        except OverflowError:
            return -math.inf
        return total

    def dh(c: float) -> float:
        total = 0.0
        try:
            for w, m in pairs:
                x = base + c * m
                if base > 0 and x <= 0.0:
                    return math.nan
                total += w * m * dU(x)
        except OverflowError:
            return math.nan
        return total

    def d2h(c: float) -> float:
        total = 0.0
        try:
            for w, m in pairs:
                x = base + c * m
                if base > 0 and x <= 0.0:
                    return math.nan
                total += w * m * m * d2U(x)
        except OverflowError:
            return math.nan
        return total

    return h, dh, d2h


def solve_one_step(
    u: UtilitySpec,
    weights: Sequence[float],
    moves: Sequence[float],
    kind: ControlKind,
) -> ScalarSearchResult:
    """
    求解单步最优控制

    所有 m_k 为0时目标与控制无关，按约定取 c = 0。

    Raises:
        ArbitrageError: 比例控制的可行区间一侧无界（单步套利）
    """
    base = 1.0 if kind is ControlKind.FRACTION else 0.0
    h, dh, d2h = one_step_objective(u, weights, moves, base)

    if all(abs(m) <= settings.zero_return_tolerance for m in moves):
        return ScalarSearchResult(argmax=0.0, value=h(0.0), iterations=0)

    if kind is ControlKind.FRACTION:
        lower, upper = admissible_fraction_interval(moves)
        if not (math.isfinite(lower) and math.isfinite(upper)):
            raise ArbitrageError(f"单步收益 {list(moves)} 同号，最优比例无界")
    else:
        # 起点使 γ·|c·m| ≤ 1，避免 h 在两侧同时溢出为 −inf
        scale = max(abs(m) for m in moves) * (u.gamma or 1.0)
        bound = expand_symmetric_bracket(h, start=1.0 / scale)
        lower, upper = -bound, bound

    result = maximize_on_interval(h, dh, d2h, lower, upper)
    logger.debug(
        f"单步最优: kind={kind.value}, 区间=({lower:.6g}, {upper:.6g}), "
        f"c*={result.argmax:.12g}, 迭代 {result.iterations}, 牛顿修正={result.polished}"
    )
    return result


__all__ = ["one_step_objective", "solve_one_step"]
