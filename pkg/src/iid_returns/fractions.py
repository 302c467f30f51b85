"""
i.i.d. 收益市场中 power/log 投资者的最优常数比例
"""
import logging

import numpy as np

from src.utility.models import UtilitySpec
from src.portfolio_solver.models import ControlKind
from src.portfolio_solver.one_step import solve_one_step
from .models import IncrementDist

logger = logging.getLogger(__name__)


def optimal_fraction(inc: IncrementDist, p: float) -> float:
    """
    argmax_π E[(1+πR)^{1−p}]/(1−p)，p = 1 时为 E[ln(1+πR)]

    π 限制在 1 + πr > 0 对所有原子成立的开区间内；漂移为0时最优比例恰为0，
    其余情况下 π 与 E[R] 同号。
    """
    u = UtilitySpec.power(p)
    b = inc.drift
    if abs(b) <= 1e-15 * float(np.abs(inc.returns).max()):
        return 0.0
    result = solve_one_step(u, inc.probs.tolist(), inc.returns.tolist(), ControlKind.FRACTION)
    logger.debug(f"最优比例: p={p}, b={b:.6g}, π={result.argmax:.12g}")
    return float(result.argmax)


__all__ = ["optimal_fraction"]
