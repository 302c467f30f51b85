"""
完备市场的对偶解法
最优终端财富满足 U'(X(leaf)) = y·D(leaf)，y 由预算约束 Σ Q(leaf)·X(leaf) = x0 确定；
中间财富与策略由 Q-鞅复制得到。
"""
import logging
from typing import Dict, Tuple

import numpy as np
from scipy.optimize import bisect

from config.dominance_settings import settings
from src.utility.calculus import evaluate, inverse_marginal, marginal
from src.utility.models import UtilityDomain, UtilitySpec
from src.utils.error_handler import BudgetBracketError, InvalidParameterError, ReplicationError
from src.tree_market.martingale import unique_emm
from src.tree_market.models import EmmDensity, EventTree
from .dynamic_programming import control_kind_for
from .models import ControlKind, Policy, Solution, SolveMethod

logger = logging.getLogger(__name__)


def _bracket_multiplier(budget, y0: float) -> Tuple[float, float]:
    """几何扩张得到 budget(lo) ≥ 0 ≥ budget(hi)"""
    lo = hi = y0
    for _ in range(settings.max_bracket_expansions):
        if budget(hi) <= 0.0:
            break
        hi *= 2.0
    else:
        raise BudgetBracketError(f"乘子上界扩张失败: y={hi}")
    for _ in range(settings.max_bracket_expansions):
        if budget(lo) >= 0.0:
            break
        lo *= 0.5
    else:
        raise BudgetBracketError(f"乘子下界扩张失败: y={lo}")
    return lo, hi


def replicate(
    tree: EventTree,
    terminal_wealth: Dict[int, float],
    kind: ControlKind = ControlKind.FRACTION,
    emm: EmmDensity = None,
) -> Tuple[Dict[int, float], Policy]:
    """
    复制终端财富

    wealth(n) = Σ_c q_c·wealth(c)；两点对冲 θ = (W_a − W_b)/(S_a − S_b)，比例 π = θ·S/W。

    Raises:
        IncompleteMarketError: 鞅测度不唯一
        ReplicationError: 缺少叶子财富，或比例控制下财富非正
    """
    emm = unique_emm(tree) if emm is None else emm
    missing = [leaf.id for leaf in tree.leaves if leaf.id not in terminal_wealth]
    if missing:
        raise ReplicationError(f"缺少叶子 {missing} 的终端财富")

    wealth: Dict[int, float] = {leaf.id: float(terminal_wealth[leaf.id]) for leaf in tree.leaves}
    controls: Dict[int, float] = {}
    for n in sorted(tree.interior, key=lambda m: m.time, reverse=True):
        children = tree.children(n.id)
        w = sum(emm.branch_q[c.id] * wealth[c.id] for c in children)
        wealth[n.id] = w
        if len(children) == 1:
            controls[n.id] = 0.0
            continue
        a, b = children
        amount = (wealth[a.id] - wealth[b.id]) / (a.price - b.price)
        if kind is ControlKind.AMOUNT:
            controls[n.id] = amount
        else:
            if not w > 0:
                raise ReplicationError(f"节点 {n.id} 财富 {w} 非正，无法表示为比例")
            controls[n.id] = amount * n.price / w
    return wealth, Policy(kind=kind, controls=controls)


def solve_complete_dual(tree: EventTree, u: UtilitySpec, x0: float) -> Solution:
    """
    用一阶条件 U'(X) = y·dQ/dP 求解完备市场

    Raises:
        IncompleteMarketError: 鞅测度不唯一
        BudgetBracketError: 预算方程无法括住根
        InvalidParameterError: 正半轴效用而 x0 ≤ 0
    """
    if u.domain is UtilityDomain.POSITIVE_HALFLINE and not x0 > 0:
        raise InvalidParameterError(f"{u.label()} 要求初始财富为正: x0={x0}")
    emm = unique_emm(tree)

    leaves = [leaf.id for leaf in tree.leaves]
    densities = np.array([emm.densities[i] for i in leaves])
    q = np.array([emm.leaf_q[i] for i in leaves])

    def budget(y: float) -> float:
        return float(np.dot(q, inverse_marginal(u, y * densities))) - x0

    # 确定性市场中 y = U'(x0) 恰好满足预算
    lo, hi = _bracket_multiplier(budget, float(marginal(u, x0)))
    if lo == hi:
        y = lo
    else:
        y = bisect(budget, lo, hi, xtol=np.finfo(float).tiny, rtol=settings.budget_rel_tolerance, maxiter=2000)

    terminal = dict(zip(leaves, inverse_marginal(u, y * densities).tolist()))
    kind = control_kind_for(u)
    wealth, policy = replicate(tree, terminal, kind, emm)

    probs = tree.path_probabilities()
    leaf_probabilities = {i: probs[i] for i in leaves}
    value = sum(p * evaluate(u, terminal[i]) for i, p in leaf_probabilities.items())
    logger.info(f"对偶求解完成: {u.label()}, x0={x0}, y={y:.12g}, 根节点财富={wealth[tree.root.id]:.12g}")
    return Solution(
        method=SolveMethod.DUAL,
        utility=u,
        x0=float(x0),
        policy=policy,
        wealth=wealth,
        leaf_probabilities=leaf_probabilities,
        value=float(value),
        multiplier=float(y),
    )


__all__ = ["replicate", "solve_complete_dual"]
