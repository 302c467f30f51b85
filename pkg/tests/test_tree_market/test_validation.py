"""
事件树模型与校验测试
"""
import pytest
from pydantic import ValidationError

from src.tree_market.models import EventTree, TreeNode
from src.tree_market.validation import require_arbitrage_free, validate_tree
from src.utils.error_handler import ArbitrageError, InvalidTreeError


def node(id, parent, prob, price, time):
    return TreeNode(id=id, parent=parent, prob=prob, price=price, time=time)


def one_period(*children, horizon=1):
    """根价格为1的单期树，children 为 (prob, price)"""
    nodes = [node(0, None, 1.0, 1.0, 0)]
    nodes += [node(i + 1, 0, p, s, 1) for i, (p, s) in enumerate(children)]
    return EventTree(horizon=horizon, nodes=nodes)


class TestTreeModel:
    """EventTree 的查询接口"""

    def test_navigation(self, base_tree):
        """根、叶、子节点与分层"""
        assert base_tree.root.id == 0
        assert [n.id for n in base_tree.leaves] == [3, 4]
        assert [n.id for n in base_tree.children(0)] == [1, 2]
        assert [[n.id for n in level] for level in base_tree.levels()] == [[0], [1, 2], [3, 4]]
        assert base_tree.is_leaf(3) and not base_tree.is_leaf(1)

    def test_returns_and_probabilities(self, base_tree):
        """单步收益与路径概率"""
        returns = [r for _, r in base_tree.child_returns(0)]
        assert returns == pytest.approx([1.0, -0.5])
        assert base_tree.path_probability(4) == pytest.approx(0.4)
        probs = base_tree.path_probabilities()
        assert sum(probs[n.id] for n in base_tree.leaves) == pytest.approx(1.0)

    @pytest.mark.parametrize(
        "fields",
        [
            {"id": 1, "parent": 0, "prob": 0.0, "price": 1.0, "time": 1},
            {"id": 1, "parent": 0, "prob": 1.5, "price": 1.0, "time": 1},
            {"id": 1, "parent": 0, "prob": 0.5, "price": 0.0, "time": 1},
            {"id": 1, "parent": 0, "prob": 0.5, "price": 1.0, "time": -1},
        ],
    )
    def test_field_bounds(self, fields):
        """概率在 (0,1]，价格为正，时刻非负"""
        with pytest.raises(ValidationError):
            TreeNode(**fields)


class TestValidateTree:
    """结构校验、单步套利与完备性"""

    def test_base_model_is_complete(self, base_tree):
        """基准模型无套利且完备"""
        report = validate_tree(base_tree)
        assert report.passed and report.complete
        assert report.node_count == 5 and report.leaf_count == 2

    def test_three_branch_root_is_incomplete(self, perturbed_tree):
        """插入分支后根节点有三个子节点"""
        report = validate_tree(perturbed_tree)
        assert report.passed
        assert report.incomplete_nodes == [0]
        assert not report.complete

    def test_one_step_arbitrage(self):
        """所有收益为正的节点被标记"""
        tree = one_period((0.5, 1.1), (0.5, 1.2))
        report = validate_tree(tree)
        assert not report.passed
        assert report.arbitrage_nodes == [0]
        with pytest.raises(ArbitrageError) as info:
            require_arbitrage_free(tree)
        assert info.value.node_ids == [0]

    def test_flat_node_is_not_arbitrage(self):
        """所有收益为0的节点合法"""
        report = validate_tree(one_period((1.0, 1.0)))
        assert report.passed and report.complete

    def test_equal_prices_are_incomplete(self):
        """两个同价子节点无法张成"""
        report = validate_tree(one_period((0.5, 1.0), (0.5, 1.0)))
        assert report.passed
        assert report.incomplete_nodes == [0]

    @pytest.mark.parametrize(
        "nodes,horizon",
        [
            ([node(0, None, 1.0, 1.0, 0), node(0, None, 1.0, 1.0, 0)], 0),
            ([node(0, None, 1.0, 1.0, 0), node(1, None, 1.0, 1.0, 0)], 0),
            ([node(0, None, 1.0, 1.0, 1)], 1),
            ([node(0, None, 1.0, 1.0, 0), node(1, 7, 1.0, 1.0, 1)], 1),
            ([node(0, None, 1.0, 1.0, 0), node(1, 0, 1.0, 1.0, 2)], 2),
            ([node(0, None, 1.0, 1.0, 0), node(1, 0, 1.0, 1.0, 1)], 2),
            ([node(0, None, 1.0, 1.0, 0), node(1, 0, 0.5, 2.0, 1), node(2, 0, 0.4, 0.5, 1)], 1),
        ],
        ids=["duplicate", "two-roots", "root-time", "orphan", "time-gap", "short-leaf", "prob-sum"],
    )
    def test_structural_defects(self, nodes, horizon):
        """结构缺陷抛出 InvalidTreeError"""
        with pytest.raises(InvalidTreeError):
            validate_tree(EventTree(horizon=horizon, nodes=nodes))

    def test_probability_sum_tolerance(self):
        """子节点概率和在 1e-12 内视为1"""
        report = validate_tree(one_period((0.3, 2.0), (0.7 + 5e-13, 0.5)))
        assert report.passed
