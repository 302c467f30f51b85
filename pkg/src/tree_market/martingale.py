"""
完备事件树上的唯一等价鞅测度
"""
import logging
from typing import Dict

from src.utils.error_handler import IncompleteMarketError
from .models import EmmDensity, EventTree
from .validation import is_complete_node, require_arbitrage_free

logger = logging.getLogger(__name__)


def unique_emm(tree: EventTree) -> EmmDensity:
    """
    逐节点求解 q·S_a + (1−q)·S_b = S，叶子密度为路径上 q/P 的乘积

    单个零收益子节点取 q = 1；完备性判定与 validate_tree 共用 is_complete_node。

    Raises:
        ArbitrageError: 存在单步套利
        IncompleteMarketError: 某节点有 ≥3 个子节点、两个子节点收益相同、唯一子节点收益非零，或 q 不在 (0,1)
    """
    require_arbitrage_free(tree)

    branch_q: Dict[int, float] = {}
    for n in tree.interior:
        children = tree.children(n.id)
        if not is_complete_node(tree, n.id):
            raise IncompleteMarketError(
                f"节点 {n.id} 有 {len(children)} 个子节点，无法由一个风险资产复制", node_id=n.id
            )
        if len(children) == 1:
            branch_q[children[0].id] = 1.0
            continue
        a, b = children
        q = (n.price - b.price) / (a.price - b.price)
        if not 0.0 < q < 1.0:
            raise IncompleteMarketError(f"节点 {n.id} 的鞅概率 q={q} 不在 (0,1)", node_id=n.id)
        branch_q[a.id] = q
        branch_q[b.id] = 1.0 - q

    leaf_q: Dict[int, float] = {}
    densities: Dict[int, float] = {}
    q_path: Dict[int, float] = {}
    p_path: Dict[int, float] = {}
    for n in sorted(tree.nodes, key=lambda m: m.time):
        if n.parent is None:
            q_path[n.id] = p_path[n.id] = 1.0
        else:
            q_path[n.id] = q_path[n.parent] * branch_q[n.id]
            p_path[n.id] = p_path[n.parent] * n.prob
    for leaf in tree.leaves:
        leaf_q[leaf.id] = q_path[leaf.id]
        densities[leaf.id] = q_path[leaf.id] / p_path[leaf.id]

    logger.debug(f"唯一鞅测度: {len(densities)} 个叶子, 密度范围 [{min(densities.values()):.6g}, {max(densities.values()):.6g}]")
    return EmmDensity(densities=densities, branch_q=branch_q, leaf_q=leaf_q)


__all__ = ["unique_emm"]
