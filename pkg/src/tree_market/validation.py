"""
事件树校验
结构缺陷直接抛出 InvalidTreeError；单步套利与不完备节点写入报告。
"""
import logging
from typing import List

from config.dominance_settings import settings
from src.utils.error_handler import ArbitrageError, InvalidTreeError
from .models import EventTree, ValidationReport

logger = logging.getLogger(__name__)


def _check_structure(tree: EventTree) -> None:
    ids = [n.id for n in tree.nodes]
    if len(set(ids)) != len(ids):
        raise InvalidTreeError("节点ID重复")

    roots = [n for n in tree.nodes if n.parent is None]
    if len(roots) != 1:
        raise InvalidTreeError(f"事件树必须恰有一个根节点，实际 {len(roots)} 个")
    if roots[0].time != 0:
        raise InvalidTreeError("根节点时刻必须为0")

    for n in tree.nodes:
        if n.parent is None:
            continue
        if not tree.has_node(n.parent):
            raise InvalidTreeError(f"节点 {n.id} 的父节点 {n.parent} 不存在")
        if n.time != tree.node(n.parent).time + 1:
            raise InvalidTreeError(f"节点 {n.id} 的时刻应为父节点时刻加1")

    tol = settings.tree_probability_tolerance
    for n in tree.nodes:
        children = tree.children(n.id)
        if not children:
            if n.time != tree.horizon:
                raise InvalidTreeError(f"叶子 {n.id} 的时刻 {n.time} 不等于终止时刻 {tree.horizon}")
            continue
        total = sum(c.prob for c in children)
        if abs(total - 1.0) > tol:
            raise InvalidTreeError(f"节点 {n.id} 的子节点概率和为 {total!r}")


def is_complete_node(tree: EventTree, node_id: int) -> bool:
    """一个零收益子节点，或两个收益率相差超过 zero_return_tolerance 的子节点"""
    zero = settings.zero_return_tolerance
    moves = tree.child_returns(node_id)
    if len(moves) == 1:
        return abs(moves[0][1]) <= zero
    if len(moves) == 2:
        return abs(moves[0][1] - moves[1][1]) > zero
    return False


def validate_tree(tree: EventTree) -> ValidationReport:
    """
    检查事件树结构与单步无套利

    每个非终端节点要么所有单步收益为0，要么最小收益 < 0 < 最大收益。

    Raises:
        InvalidTreeError: 结构缺陷（重复/孤立节点、时刻不连续、概率和不为1）
    """
    _check_structure(tree)

    zero = settings.zero_return_tolerance
    arbitrage: List[int] = []
    incomplete: List[int] = []
    for n in tree.interior:
        returns = [r for _, r in tree.child_returns(n.id)]
        if all(abs(r) <= zero for r in returns):
            pass
        elif not (min(returns) < -zero and max(returns) > zero):
            arbitrage.append(n.id)
        if not is_complete_node(tree, n.id):
            incomplete.append(n.id)

    report = ValidationReport(
        passed=not arbitrage,
        arbitrage_nodes=arbitrage,
        incomplete_nodes=incomplete,
        node_count=len(tree.nodes),
        leaf_count=len(tree.leaves),
    )
    if arbitrage:
        logger.warning(f"事件树存在单步套利节点: {arbitrage}")
    logger.debug(f"事件树校验: {report.node_count} 节点, 不完备节点 {len(incomplete)} 个")
    return report


def require_arbitrage_free(tree: EventTree) -> ValidationReport:
    """
    校验并要求无套利

    Raises:
        ArbitrageError: 存在单步套利节点（效用最大化无界）
    """
    report = validate_tree(tree)
    if not report.passed:
        raise ArbitrageError(f"单步套利节点 {report.arbitrage_nodes}，效用最大化问题无界", node_ids=report.arbitrage_nodes)
    return report


__all__ = ["validate_tree", "require_arbitrage_free", "is_complete_node"]
