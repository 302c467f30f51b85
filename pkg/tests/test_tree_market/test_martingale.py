"""
唯一等价鞅测度测试
"""
import numpy as np
import pytest

from src.tree_market.martingale import unique_emm
from src.tree_market.models import EventTree, TreeNode
from src.tree_market.validation import validate_tree
from src.utils.error_handler import ArbitrageError, IncompleteMarketError
from tests.utils.generators import random_complete_tree


class TestUniqueEmm:
    """完备树上的 dQ/dP"""

    def test_base_model(self, base_tree):
        """q_up = 1/3，零收益节点 q = 1"""
        emm = unique_emm(base_tree)
        assert emm.branch_q[1] == pytest.approx(1.0 / 3.0)
        assert emm.branch_q[2] == pytest.approx(2.0 / 3.0)
        assert emm.branch_q[3] == 1.0 and emm.branch_q[4] == 1.0
        assert emm.densities[3] == pytest.approx((1.0 / 3.0) / 0.6)
        assert emm.densities[4] == pytest.approx((2.0 / 3.0) / 0.4)

    def test_random_trees_are_martingales(self):
        """Σ q_c S_c = S，E_P[dQ/dP] = 1"""
        rng = np.random.default_rng(11)
        for _ in range(50):
            tree = random_complete_tree(rng, int(rng.integers(1, 6)))
            emm = unique_emm(tree)
            for n in tree.interior:
                expected = sum(emm.branch_q[c.id] * c.price for c in tree.children(n.id))
                assert expected == pytest.approx(n.price, rel=1e-12)
            probs = tree.path_probabilities()
            assert sum(probs[i] * d for i, d in emm.densities.items()) == pytest.approx(1.0, rel=1e-12)
            assert sum(emm.leaf_q.values()) == pytest.approx(1.0, rel=1e-12)
            assert all(d > 0 for d in emm.densities.values())

    def test_incomplete_root(self, perturbed_tree):
        """三个子节点时抛出并给出节点"""
        with pytest.raises(IncompleteMarketError) as info:
            unique_emm(perturbed_tree)
        assert info.value.node_id == 0

    def test_single_child_with_price_change(self):
        """单个非零收益子节点即套利"""
        tree = EventTree(
            horizon=1,
            nodes=[TreeNode(id=0, parent=None, prob=1.0, price=1.0, time=0), TreeNode(id=1, parent=0, prob=1.0, price=2.0, time=1)],
        )
        with pytest.raises(ArbitrageError):
            unique_emm(tree)


class TestZeroReturnTolerance:
    """完备性判定与 validate_tree 使用同一容差"""

    def test_rounding_level_single_move(self):
        """唯一子节点收益为 1e-14 时视为零收益"""
        tree = EventTree(
            horizon=1,
            nodes=[
                TreeNode(id=0, parent=None, prob=1.0, price=1.0, time=0),
                TreeNode(id=1, parent=0, prob=1.0, price=1.0 + 1e-14, time=1),
            ],
        )
        report = validate_tree(tree)
        assert report.passed and report.complete
        emm = unique_emm(tree)
        assert emm.branch_q[1] == 1.0
        assert emm.densities[1] == 1.0

    def test_indistinguishable_pair(self):
        """两个子节点收益只差 1e-14 时两处都判为不完备"""
        tree = EventTree(
            horizon=1,
            nodes=[
                TreeNode(id=0, parent=None, prob=1.0, price=1.0, time=0),
                TreeNode(id=1, parent=0, prob=0.5, price=1.0, time=1),
                TreeNode(id=2, parent=0, prob=0.5, price=1.0 + 1e-14, time=1),
            ],
        )
        assert validate_tree(tree).incomplete_nodes == [0]
        with pytest.raises(IncompleteMarketError):
            unique_emm(tree)
