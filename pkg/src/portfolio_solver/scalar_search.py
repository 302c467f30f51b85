"""
一维凹函数最大化
黄金分割搜索限制在开区间 (l+δ, u−δ) 内，δ = 1e-12·(u−l)，之后用一阶条件做有保护的牛顿修正。
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Tuple

from config.dominance_settings import settings
from src.utils.error_handler import BudgetBracketError

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
# 开区间收缩比例
BOUNDARY_SHRINK = 1e-12

ScalarFunction = Callable[[float], float]


@dataclass(frozen=True)
class ScalarSearchResult:
    """一维搜索结果"""
    argmax: float
    value: float
    iterations: int
    polished: bool = False


def admissible_fraction_interval(returns: Iterable[float]) -> Tuple[float, float]:
    """
    使 1 + π·r > 0 对所有收益 r 成立的开区间 (l, u)

    没有正收益时 l = −inf，没有负收益时 u = +inf。
    """
    zero = settings.zero_return_tolerance
    lower, upper = -math.inf, math.inf
    for r in returns:
        if r > zero:
            lower = max(lower, -1.0 / r)
        elif r < -zero:
            upper = min(upper, -1.0 / r)
    return lower, upper


def golden_section_maximize(
    f: ScalarFunction,
    lo: float,
    hi: float,
    tol: Optional[float] = None,
    max_iterations: int = 500,
) -> ScalarSearchResult:
    """在闭区间 [lo, hi] 上最大化单峰函数 f"""
    tol = settings.control_tolerance if tol is None else tol
    a, b = lo, hi
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    iterations = 0
    while b - a > tol * max(1.0, abs(a), abs(b)) and iterations < max_iterations:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        iterations += 1
    if f1 >= f2:
        return ScalarSearchResult(argmax=x1, value=f1, iterations=iterations)
    return ScalarSearchResult(argmax=x2, value=f2, iterations=iterations)


def newton_polish(
    f: ScalarFunction,
    df: ScalarFunction,
    d2f: ScalarFunction,
    x: float,
    lo: float,
    hi: float,
    max_steps: int = 8,
) -> Tuple[float, bool]:
    """
    对一阶条件 f'(x) = 0 做牛顿修正

    步长减半直到落在开区间 (lo, hi) 内且 |f'| 不增；f 在最优点附近过于平坦，
    因此以导数而不是函数值判断改进。返回 (x, 是否修正过)。
    """
    polished = False
    g = df(x)
    for _ in range(max_steps):
        h = d2f(x)
        if not (h < 0.0 and math.isfinite(g)) or g == 0.0:
            break
        step = -g / h
        accepted = False
        for _ in range(60):
            candidate = x + step
            if lo < candidate < hi:
                g_new = df(candidate)
                if math.isfinite(g_new) and abs(g_new) <= abs(g):
                    accepted = True
                    break
            step *= 0.5
        if not accepted:
            break
        moved = abs(candidate - x)
        x, g = candidate, g_new
        polished = True
        if moved <= 1e-15 * max(1.0, abs(x)):
            break
    return x, polished


def maximize_on_interval(
    f: ScalarFunction,
    df: ScalarFunction,
    d2f: ScalarFunction,
    lower: float,
    upper: float,
    tol: Optional[float] = None,
) -> ScalarSearchResult:
    """在开区间 (lower, upper) 上最大化凹函数：边界内缩后黄金分割，再做牛顿修正"""
    delta = BOUNDARY_SHRINK * (upper - lower)
    search = golden_section_maximize(f, lower + delta, upper - delta, tol)
    x, polished = newton_polish(f, df, d2f, search.argmax, lower, upper)
    return ScalarSearchResult(argmax=x, value=f(x), iterations=search.iterations, polished=polished)


def expand_symmetric_bracket(f: ScalarFunction, start: float = 1.0, max_expansions: Optional[int] = None) -> float:
    """
    几何扩张 B 直到 f(±B) ≤ f(0)，凹函数的最大点随之落在 [−B, B] 内

    Raises:
        BudgetBracketError: 扩张次数用尽（目标函数无上界）
    """
    max_expansions = settings.max_bracket_expansions if max_expansions is None else max_expansions
    centre = f(0.0)
    bound = start
    for _ in range(max_expansions):
        if f(bound) <= centre and f(-bound) <= centre:
            return bound
        bound *= 2.0
    raise BudgetBracketError(f"扩张 {max_expansions} 次后仍无法括住最大点")


__all__ = [
    "ScalarSearchResult",
    "admissible_fraction_interval",
    "golden_section_maximize",
    "newton_polish",
    "maximize_on_interval",
    "expand_symmetric_bracket",
]
