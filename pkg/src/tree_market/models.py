# tree_market/models.py
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr


class TreeNode(BaseModel):
    """事件树节点"""
    id: int = Field(..., description="节点ID")
    parent: Optional[int] = Field(None, description="父节点ID，根节点为空")
    prob: float = Field(..., gt=0.0, le=1.0, description="从父节点到达本节点的条件概率")
    price: float = Field(..., gt=0.0, description="风险资产价格")
    time: int = Field(..., ge=0, description="时刻")

    model_config = ConfigDict(frozen=True, extra="forbid")


class EventTree(BaseModel):
    """
    有限多期市场：无风险资产恒为1，一个风险资产

    节点顺序即子节点顺序；结构合法性由 validate_tree 检查。
    """
    horizon: int = Field(..., ge=0, description="终止时刻 T")
    nodes: List[TreeNode] = Field(..., min_length=1, description="节点列表")

    model_config = ConfigDict(frozen=True, extra="forbid")

    _by_id: Dict[int, TreeNode] = PrivateAttr(default_factory=dict)
    _children: Dict[int, List[int]] = PrivateAttr(default_factory=dict)

    def model_post_init(self, __context) -> None:
        by_id = {}
        children: Dict[int, List[int]] = {}
        for n in self.nodes:
            by_id[n.id] = n
            children.setdefault(n.id, [])
        for n in self.nodes:
            if n.parent is not None and n.parent in children:
                children[n.parent].append(n.id)
        self._by_id = by_id
        self._children = children

    def node(self, node_id: int) -> TreeNode:
        return self._by_id[node_id]

    def has_node(self, node_id: int) -> bool:
        return node_id in self._by_id

    def children(self, node_id: int) -> List[TreeNode]:
        return [self._by_id[c] for c in self._children.get(node_id, [])]

    def is_leaf(self, node_id: int) -> bool:
        return not self._children.get(node_id)

    @property
    def root(self) -> TreeNode:
        roots = [n for n in self.nodes if n.parent is None]
        return roots[0]

    @property
    def leaves(self) -> List[TreeNode]:
        return [n for n in self.nodes if self.is_leaf(n.id)]

    @property
    def interior(self) -> List[TreeNode]:
        return [n for n in self.nodes if not self.is_leaf(n.id)]

    def levels(self) -> List[List[TreeNode]]:
        """按时刻分层的节点（层内保持列表顺序）"""
        levels: List[List[TreeNode]] = [[] for _ in range(self.horizon + 1)]
        for n in self.nodes:
            if n.time <= self.horizon:
                levels[n.time].append(n)
        return levels

    def child_returns(self, node_id: int) -> List[Tuple[TreeNode, float]]:
        """(子节点, 单步收益率 S_c/S − 1)"""
        price = self._by_id[node_id].price
        return [(c, c.price / price - 1.0) for c in self.children(node_id)]

    def path_probabilities(self) -> Dict[int, float]:
        """每个节点的路径概率 P(到达该节点)"""
        probs: Dict[int, float] = {}
        for n in sorted(self.nodes, key=lambda m: m.time):
            probs[n.id] = 1.0 if n.parent is None else probs[n.parent] * n.prob
        return probs

    def path_probability(self, node_id: int) -> float:
        prob = 1.0
        n = self._by_id[node_id]
        while n.parent is not None:
            prob *= n.prob
            n = self._by_id[n.parent]
        return prob


class ValidationReport(BaseModel):
    """validate_tree 的检查结果"""
    passed: bool = Field(..., description="是否无单步套利")
    arbitrage_nodes: List[int] = Field(default_factory=list, description="存在单步套利的节点")
    incomplete_nodes: List[int] = Field(default_factory=list, description="无法由一个风险资产张成的节点")
    node_count: int = Field(0, description="节点数")
    leaf_count: int = Field(0, description="叶子数")

    @property
    def complete(self) -> bool:
        return self.passed and not self.incomplete_nodes


class EmmDensity(BaseModel):
    """唯一等价鞅测度"""
    densities: Dict[int, float] = Field(..., description="叶子上的 dQ/dP")
    branch_q: Dict[int, float] = Field(..., description="到达每个非根节点的 Q 条件概率")
    leaf_q: Dict[int, float] = Field(default_factory=dict, description="叶子的 Q 路径概率")

    model_config = ConfigDict(frozen=True)


__all__ = ["TreeNode", "EventTree", "ValidationReport", "EmmDensity"]
