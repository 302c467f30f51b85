"""
事件树构造
两期二叉基准模型、插入小概率分支的扰动模型、一般扰动与 i.i.d. 收益的完整事件树
"""
import logging
from enum import Enum
from typing import Callable, Iterable, List, Union

from config.dominance_settings import settings
from src.distributions.discrete import DiscreteDist
from src.utils.error_handler import EnumerationCapExceededError, InvalidParameterError
from .models import EventTree, TreeNode

logger = logging.getLogger(__name__)

NodeSelector = Union[Callable[[TreeNode], bool], Iterable[int]]

# 基准模型参数：S_1 ∈ {2, 0.5}，概率 (0.6, 0.4)，第二期价格不变
BASE_UP_PRICE = 2.0
BASE_DOWN_PRICE = 0.5
BASE_UP_PROB = 0.6
BASE_DOWN_PROB = 0.4


class ProbabilityConvention(str, Enum):
    """插入分支后根节点概率的取法"""
    NORMALIZED = "normalized"     # (0.6, ε, 0.4)/(1+ε)
    SUBTRACTIVE = "subtractive"   # (0.6, ε, 0.4−ε)


def _check_branch_parameters(alpha: float, K: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise InvalidParameterError(f"alpha 必须在 (0,1) 内: {alpha}")
    if not K > 1.0:
        raise InvalidParameterError(f"K 必须大于1: {K}")


def build_base_example() -> EventTree:
    """两期完备二叉模型：1 → 2 (0.6) | 0.5 (0.4)，第二期不变"""
    nodes = [
        TreeNode(id=0, parent=None, prob=1.0, price=1.0, time=0),
        TreeNode(id=1, parent=0, prob=BASE_UP_PROB, price=BASE_UP_PRICE, time=1),
        TreeNode(id=2, parent=0, prob=BASE_DOWN_PROB, price=BASE_DOWN_PRICE, time=1),
        TreeNode(id=3, parent=1, prob=1.0, price=BASE_UP_PRICE, time=2),
        TreeNode(id=4, parent=2, prob=1.0, price=BASE_DOWN_PRICE, time=2),
    ]
    return EventTree(horizon=2, nodes=nodes)


def build_inserted_branch(alpha: float = 0.05, K: float = 20.0, c: float = BASE_DOWN_PRICE) -> EventTree:
    """单期市场：c → cK (1−α) | c/2 (α)"""
    _check_branch_parameters(alpha, K)
    if not c > 0:
        raise InvalidParameterError(f"价格必须为正: c={c}")
    nodes = [
        TreeNode(id=0, parent=None, prob=1.0, price=c, time=0),
        TreeNode(id=1, parent=0, prob=1.0 - alpha, price=c * K, time=1),
        TreeNode(id=2, parent=0, prob=alpha, price=c / 2.0, time=1),
    ]
    return EventTree(horizon=1, nodes=nodes)


def build_perturbed_example(
    eps: float = 0.01,
    alpha: float = 0.05,
    K: float = 20.0,
    convention: ProbabilityConvention = ProbabilityConvention.NORMALIZED,
) -> EventTree:
    """
    在基准模型中插入小概率分支

    根节点三个分支：S=2 之后不变；S=0.5 之后分叉到 0.5K (1−α) / 0.25 (α)；S=0.5 之后不变。
    eps = 0 时返回基准模型（空分支被剪除）。

    Raises:
        InvalidParameterError: eps ∉ [0,1)，alpha ∉ (0,1)，K ≤ 1，或减法约定下 eps ≥ 0.4
    """
    _check_branch_parameters(alpha, K)
    if not 0.0 <= eps < 1.0:
        raise InvalidParameterError(f"eps 必须在 [0,1) 内: {eps}")
    if eps == 0.0:
        return build_base_example()

    convention = ProbabilityConvention(convention)
    if convention is ProbabilityConvention.NORMALIZED:
        up, head, down = BASE_UP_PROB / (1 + eps), eps / (1 + eps), BASE_DOWN_PROB / (1 + eps)
    else:
        if not eps < BASE_DOWN_PROB:
            raise InvalidParameterError(f"减法约定要求 eps < {BASE_DOWN_PROB}: {eps}")
        up, head, down = BASE_UP_PROB, eps, BASE_DOWN_PROB - eps

    c = BASE_DOWN_PRICE
    nodes = [
        TreeNode(id=0, parent=None, prob=1.0, price=1.0, time=0),
        TreeNode(id=1, parent=0, prob=up, price=BASE_UP_PRICE, time=1),
        TreeNode(id=2, parent=0, prob=head, price=c, time=1),
        TreeNode(id=3, parent=0, prob=down, price=c, time=1),
        TreeNode(id=4, parent=1, prob=1.0, price=BASE_UP_PRICE, time=2),
        TreeNode(id=5, parent=2, prob=1.0 - alpha, price=c * K, time=2),
        TreeNode(id=6, parent=2, prob=alpha, price=c / 2.0, time=2),
        TreeNode(id=7, parent=3, prob=1.0, price=c, time=2),
    ]
    logger.info(f"构造扰动模型: eps={eps}, alpha={alpha}, K={K}, 约定={convention.value}")
    return EventTree(horizon=2, nodes=nodes)


def _selected_ids(tree: EventTree, target_time: int, selector: NodeSelector) -> List[int]:
    level = [n for n in tree.nodes if n.time == target_time]
    if callable(selector):
        return [n.id for n in level if selector(n)]
    wanted = set(selector)
    return [n.id for n in level if n.id in wanted]


def perturb(
    tree: EventTree,
    target_time: int,
    selector: NodeSelector,
    eps: float,
    alpha: float,
    K: float,
) -> EventTree:
    """
    对 T−1 时刻的选中节点掷一枚独立硬币（正面概率 eps）

    反面：节点保留原子树，概率乘 (1−eps)；
    正面：新建同价兄弟节点，概率为原概率乘 eps，最后一期变为 cK (1−α) / c/2 (α)。
    eps = 0 时返回与输入等价的树。

    Raises:
        InvalidParameterError: target_time ≠ T−1、参数越界或选择器未匹配任何节点
    """
    _check_branch_parameters(alpha, K)
    if not 0.0 <= eps < 1.0:
        raise InvalidParameterError(f"eps 必须在 [0,1) 内: {eps}")
    if tree.horizon < 2 or target_time != tree.horizon - 1:
        raise InvalidParameterError(f"只能扰动 T−1 时刻的非根节点: target_time={target_time}, T={tree.horizon}")

    selected = _selected_ids(tree, target_time, selector)
    if not selected:
        raise InvalidParameterError(f"选择器在时刻 {target_time} 没有匹配任何节点")
    if eps == 0.0:
        return EventTree(horizon=tree.horizon, nodes=list(tree.nodes))

    chosen = set(selected)
    nodes = [n.model_copy(update={"prob": n.prob * (1.0 - eps)}) if n.id in chosen else n for n in tree.nodes]
    next_id = max(n.id for n in tree.nodes) + 1
    for node_id in selected:
        original = tree.node(node_id)
        c = original.price
        head_id = next_id
        nodes.append(TreeNode(id=head_id, parent=original.parent, prob=original.prob * eps, price=c, time=original.time))
        nodes.append(TreeNode(id=head_id + 1, parent=head_id, prob=1.0 - alpha, price=c * K, time=original.time + 1))
        nodes.append(TreeNode(id=head_id + 2, parent=head_id, prob=alpha, price=c / 2.0, time=original.time + 1))
        next_id += 3

    logger.info(f"扰动 {len(selected)} 个节点: eps={eps}, alpha={alpha}, K={K}")
    return EventTree(horizon=tree.horizon, nodes=nodes)


def build_iid_tree(returns: DiscreteDist, periods: int, s0: float = 1.0) -> EventTree:
    """
    i.i.d. 单期收益的完整事件树（不合并重合路径）

    Raises:
        InvalidParameterError: periods < 0 或某个收益 ≤ −1（价格非正）
        EnumerationCapExceededError: 节点数超过 enumeration_cap
    """
    if periods < 0:
        raise InvalidParameterError(f"期数不能为负: {periods}")
    if returns.support_min <= -1.0:
        raise InvalidParameterError(f"收益率必须大于 −1 才能保持价格为正: {returns.support_min}")
    k = len(returns)
    total = sum(k ** t for t in range(periods + 1))
    if total > settings.enumeration_cap:
        raise EnumerationCapExceededError(
            f"完整事件树有 {total} 个节点，超过上限 {settings.enumeration_cap}", atoms=total, cap=settings.enumeration_cap
        )

    nodes = [TreeNode(id=0, parent=None, prob=1.0, price=s0, time=0)]
    frontier = [nodes[0]]
    for t in range(1, periods + 1):
        new_frontier = []
        for parent in frontier:
            for r, p in returns.atoms:
                child = TreeNode(id=len(nodes), parent=parent.id, prob=p, price=parent.price * (1.0 + r), time=t)
                nodes.append(child)
                new_frontier.append(child)
        frontier = new_frontier
    return EventTree(horizon=periods, nodes=nodes)


__all__ = [
    "ProbabilityConvention",
    "build_base_example",
    "build_inserted_branch",
    "build_perturbed_example",
    "perturb",
    "build_iid_tree",
]
