"""
事件树上的逆向动态规划

值函数按财富分解，控制与当前财富无关：
  power: V(n, x) = v(n)·x^{1−p}/(1−p)，v(n) = max_π Σ_c P_c v(c) (1+π r_c)^{1−p}
  log:   V(n, x) = ln x + a(n)，      a(n) = max_π Σ_c P_c ln(1+π r_c) + Σ_c P_c a(c)
  exp:   V(n, x) = −w(n) e^{−γx}，    w(n) = min_θ Σ_c P_c w(c) e^{−γθ(S_c−S_n)}
同一时刻的节点互不依赖，可按层并行，结果与顺序计算逐位一致。
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Tuple

from src.utility.calculus import evaluate
from src.utility.models import UtilityDomain, UtilityKind, UtilitySpec
from src.utils.error_handler import InvalidParameterError
from src.tree_market.models import EventTree, TreeNode
from src.tree_market.validation import require_arbitrage_free
from .models import ControlKind, Policy, Solution, SolveMethod
from .one_step import solve_one_step

logger = logging.getLogger(__name__)


def control_kind_for(u: UtilitySpec) -> ControlKind:
    """power/log 用财富比例，exp 用风险资产数量"""
    return ControlKind.AMOUNT if u.kind is UtilityKind.EXPONENTIAL else ControlKind.FRACTION


def _leaf_factor(u: UtilitySpec) -> float:
    return 0.0 if u.kind is UtilityKind.LOG else 1.0


def _solve_node(tree: EventTree, u: UtilitySpec, node: TreeNode, factors: Dict[int, float]) -> Tuple[float, float]:
    """单个节点的 (最优控制, 值函数因子)"""
    children = tree.children(node.id)
    probs = [c.prob for c in children]
    child_factors = [factors[c.id] for c in children]

    if u.kind is UtilityKind.EXPONENTIAL:
        moves = [c.price - node.price for c in children]
        weights = [p * f for p, f in zip(probs, child_factors)]
        result = solve_one_step(u, weights, moves, ControlKind.AMOUNT)
        return result.argmax, -result.value

    moves = [c.price / node.price - 1.0 for c in children]
    if u.kind is UtilityKind.LOG:
        result = solve_one_step(u, probs, moves, ControlKind.FRACTION)
        return result.argmax, result.value + sum(p * f for p, f in zip(probs, child_factors))

    weights = [p * f for p, f in zip(probs, child_factors)]
    result = solve_one_step(u, weights, moves, ControlKind.FRACTION)
    return result.argmax, (1.0 - u.p) * result.value


def backward_induction(tree: EventTree, u: UtilitySpec, workers: int = 1) -> Tuple[Dict[int, float], Dict[int, float]]:
    """
    逐层逆向求解

    Returns:
        (节点控制, 节点值函数因子)
    """
    factors: Dict[int, float] = {leaf.id: _leaf_factor(u) for leaf in tree.leaves}
    controls: Dict[int, float] = {}
    levels = tree.levels()

    executor = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for t in range(tree.horizon - 1, -1, -1):
            level: List[TreeNode] = levels[t]
            if executor is not None and len(level) > 1:
                results = list(executor.map(lambda n: _solve_node(tree, u, n, factors), level))
            else:
                results = [_solve_node(tree, u, n, factors) for n in level]
            # 写回放在整层计算完成之后
            for n, (control, factor) in zip(level, results):
                controls[n.id] = control
                factors[n.id] = factor
    finally:
        if executor is not None:
            executor.shutdown(wait=True)
    return controls, factors


def roll_forward(tree: EventTree, kind: ControlKind, controls: Dict[int, float], x0: float) -> Dict[int, float]:
    """按自融资条件从根节点向前生成财富"""
    wealth = {tree.root.id: float(x0)}
    for n in sorted(tree.nodes, key=lambda m: m.time):
        if tree.is_leaf(n.id):
            continue
        c = controls[n.id]
        w = wealth[n.id]
        for child in tree.children(n.id):
            if kind is ControlKind.FRACTION:
                wealth[child.id] = w * (1.0 + c * (child.price / n.price - 1.0))
            else:
                wealth[child.id] = w + c * (child.price - n.price)
    return wealth


def solve_dp(tree: EventTree, u: UtilitySpec, x0: float, workers: int = 1) -> Solution:
    """
    逆向动态规划求解最优财富过程（完备与不完备市场均可）

    Args:
        tree: 事件树
        u: 效用函数
        x0: 初始财富，power/log 要求为正
        workers: 层内并行线程数

    Raises:
        ArbitrageError: 存在单步套利
        InvalidParameterError: 正半轴效用而 x0 ≤ 0，或 workers < 1
    """
    if u.domain is UtilityDomain.POSITIVE_HALFLINE and not x0 > 0:
        raise InvalidParameterError(f"{u.label()} 要求初始财富为正: x0={x0}")
    if workers < 1:
        raise InvalidParameterError(f"workers 必须不小于1: {workers}")
    require_arbitrage_free(tree)

    kind = control_kind_for(u)
    controls, factors = backward_induction(tree, u, workers)
    wealth = roll_forward(tree, kind, controls, x0)

    probs = tree.path_probabilities()
    leaf_probabilities = {leaf.id: probs[leaf.id] for leaf in tree.leaves}
    value = sum(p * evaluate(u, wealth[leaf]) for leaf, p in leaf_probabilities.items())

    root_id = tree.root.id
    logger.info(
        f"DP 求解完成: {u.label()}, x0={x0}, 根节点控制={controls.get(root_id, 0.0):.10g}, "
        f"期望效用={value:.10g}, 节点数={len(tree.nodes)}"
    )
    return Solution(
        method=SolveMethod.DP,
        utility=u,
        x0=float(x0),
        policy=Policy(kind=kind, controls=controls),
        wealth=wealth,
        leaf_probabilities=leaf_probabilities,
        value=float(value),
        multiplier=None,
    )


__all__ = ["control_kind_for", "backward_induction", "roll_forward", "solve_dp"]
