"""
单调凸序与凸序检验

看涨差 g(K) = E[(Y−K)^+] − E[(X−K)^+] 是分段线性函数，拐点只出现在两个分布的支撑点上，
K → −∞ 时趋于均值差。因此在全部支撑点上求值并比较均值即为精确检验。
"""
import logging
from typing import Optional, Tuple

import numpy as np

from config.dominance_settings import settings
from src.distributions.discrete import DiscreteDist, call_values, center, mean
from src.utils.error_handler import InvalidParameterError
from .models import OrderRelation, OrderVerdict

logger = logging.getLogger(__name__)

# 看涨差并列最小时的相对判等阈值
TIE_RELATIVE = 1e-9


def kink_strikes(X: DiscreteDist, Y: DiscreteDist) -> np.ndarray:
    """两个支撑的并集（升序），即看涨差函数的全部拐点"""
    return np.union1d(X.values, Y.values)


def default_tolerance(X: DiscreteDist, Y: DiscreteDist) -> float:
    """默认容差：order_tolerance · max(1, |E[X]|, |E[Y]|)"""
    return settings.order_tolerance * max(1.0, abs(mean(X)), abs(mean(Y)))


def call_gap_curve(X: DiscreteDist, Y: DiscreteDist, strikes) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    计算给定执行价上的看涨价值与看涨差

    Returns:
        (call_x, call_y, gap)，gap = call_y − call_x
    """
    strikes = np.asarray(strikes, dtype=float)
    call_x = call_values(X, strikes)
    call_y = call_values(Y, strikes)
    return call_x, call_y, call_y - call_x


def _resolve_tolerance(X: DiscreteDist, Y: DiscreteDist, tol: Optional[float]) -> float:
    if tol is None:
        return default_tolerance(X, Y)
    if not tol > 0:
        raise InvalidParameterError(f"容差必须为正: tol={tol}")
    return float(tol)


def _evaluate(X: DiscreteDist, Y: DiscreteDist, tol: float, relation: OrderRelation) -> OrderVerdict:
    strikes = kink_strikes(X, Y)
    _, _, gaps = call_gap_curve(X, Y, strikes)
    mean_gap = mean(Y) - mean(X)

    # 第0个候选是 K → −∞ 的极限（均值比较）
    candidate_strikes = np.concatenate(([-np.inf], strikes))
    candidate_gaps = np.concatenate(([mean_gap], gaps))
    min_gap = float(candidate_gaps.min())

    slack = max(TIE_RELATIVE * abs(min_gap), 1e-15 * max(1.0, float(np.abs(strikes).max())))
    tied = np.flatnonzero(candidate_gaps <= min_gap + slack)
    index = int(tied[-1])
    # 最小支撑点左侧看涨差恒等于均值差
    witness = float(candidate_strikes[index]) if index > 1 else float("-inf")

    holds = min_gap >= -tol and mean_gap >= -tol
    if relation is not OrderRelation.MONOTONE_CONVEX:
        holds = holds and abs(mean_gap) <= tol

    # 最大拐点处看涨差恒为0；凸序下最小拐点处恒为均值差
    interior = gaps[:-1]
    if relation is not OrderRelation.MONOTONE_CONVEX:
        interior = interior[1:]
    elif interior.size:
        interior = np.append(interior, mean_gap)
    boundary = bool(holds and interior.size and float(interior.min()) <= tol)

    verdict = OrderVerdict(
        relation=relation,
        holds=bool(holds),
        witness_strike=witness,
        min_gap=min_gap,
        mean_gap=float(mean_gap),
        tolerance=tol,
        boundary=boundary,
    )
    logger.debug(
        f"{relation.value} 检验: holds={verdict.holds}, min_gap={min_gap:.6g}, "
        f"witness={witness:.6g}, mean_gap={mean_gap:.6g}"
    )
    return verdict


def check_mc(X: DiscreteDist, Y: DiscreteDist, tol: Optional[float] = None) -> OrderVerdict:
    """X ≤_MC Y 当且仅当所有看涨差非负且 E[X] ≤ E[Y]"""
    return _evaluate(X, Y, _resolve_tolerance(X, Y, tol), OrderRelation.MONOTONE_CONVEX)


def check_convex(X: DiscreteDist, Y: DiscreteDist, tol: Optional[float] = None) -> OrderVerdict:
    """X ≤_C Y 当且仅当 X ≤_MC Y 且 E[X] = E[Y]"""
    return _evaluate(X, Y, _resolve_tolerance(X, Y, tol), OrderRelation.CONVEX)


def check_centered_convex(X: DiscreteDist, Y: DiscreteDist, tol: Optional[float] = None) -> OrderVerdict:
    """(X − E[X]) ≤_C (Y − E[Y])"""
    tol = _resolve_tolerance(X, Y, tol)
    return _evaluate(center(X), center(Y), tol, OrderRelation.CENTERED_CONVEX)


def check_relation(X: DiscreteDist, Y: DiscreteDist, relation: OrderRelation, tol: Optional[float] = None) -> OrderVerdict:
    """按关系名分派"""
    checkers = {
        OrderRelation.MONOTONE_CONVEX: check_mc,
        OrderRelation.CONVEX: check_convex,
        OrderRelation.CENTERED_CONVEX: check_centered_convex,
    }
    return checkers[OrderRelation(relation)](X, Y, tol)


__all__ = [
    "kink_strikes",
    "default_tolerance",
    "call_gap_curve",
    "check_mc",
    "check_convex",
    "check_centered_convex",
    "check_relation",
]
