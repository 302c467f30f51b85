"""
Strassen 耦合与一阶段单纯形测试
"""
import numpy as np
import pytest
from scipy.optimize import linprog

from src.distributions.discrete import DiscreteDist, center, mean, shift, total_variation
from src.portfolio_solver.dynamic_programming import solve_dp
from src.stochastic_order.coupling import strassen_coupling
from src.stochastic_order.simplex import find_feasible_point
from src.utils.error_handler import InfeasibleCouplingError
from tests.utils.generators import random_spread_pair


def linprog_feasible(X: DiscreteDist, Y: DiscreteDist) -> bool:
    """用 scipy 的 HiGHS 独立判断耦合线性规划是否可行"""
    s = mean(Y) - mean(X)
    nx, ny = len(X), len(Y)
    rows, rhs = [], []
    for i in range(nx):
        row = np.zeros((nx, ny))
        row[i, :] = 1.0
        rows.append(row.ravel())
        rhs.append(X.probs[i])
    for j in range(ny):
        row = np.zeros((nx, ny))
        row[:, j] = 1.0
        rows.append(row.ravel())
        rhs.append(Y.probs[j])
    for i in range(nx):
        row = np.zeros((nx, ny))
        row[i, :] = Y.values - X.values[i] - s
        rows.append(row.ravel())
        rhs.append(0.0)
    result = linprog(np.zeros(nx * ny), A_eq=np.array(rows), b_eq=np.array(rhs), bounds=(0, None), method="highs")
    return result.status == 0


class TestFindFeasiblePoint:
    """稠密一阶段单纯形"""

    def test_simple_system(self):
        """x1 + x2 = 1, x1 − x2 = 0.5"""
        result = find_feasible_point([[1.0, 1.0], [1.0, -1.0]], [1.0, 0.5])
        assert result.is_feasible(1e-12)
        assert result.x.tolist() == pytest.approx([0.75, 0.25])
        assert result.infeasibility == pytest.approx(0.0, abs=1e-12)

    def test_negative_right_hand_side(self):
        """右端为负的行先取反"""
        result = find_feasible_point([[-1.0, 0.0], [0.0, 1.0]], [-2.0, 3.0])
        assert result.x.tolist() == pytest.approx([2.0, 3.0])

    def test_infeasible_system(self):
        """矛盾约束：一阶段最优值为正"""
        result = find_feasible_point([[1.0, 1.0], [1.0, 1.0]], [1.0, 2.0])
        assert result.infeasibility == pytest.approx(1.0)
        assert not result.is_feasible(1e-8)

    def test_degenerate_rows(self):
        """全零右端与冗余行"""
        A = [[1.0, -1.0, 0.0], [1.0, -1.0, 0.0], [0.0, 0.0, 1.0]]
        result = find_feasible_point(A, [0.0, 0.0, 1.0])
        assert result.is_feasible(1e-12)
        assert np.all(result.x >= 0)


class TestStrassenCoupling:
    """Y = X + shift + ε，E[ε|X] = 0"""

    def test_symmetric_spread(self, symmetric_pair):
        """0 → ±1 的唯一耦合"""
        X, Y = symmetric_pair
        coupling = strassen_coupling(X, Y)
        cells = sorted((c.x, c.y, c.mass) for c in coupling.joint)
        assert cells == [(0.0, -1.0, pytest.approx(0.5)), (0.0, 1.0, pytest.approx(0.5))]
        assert coupling.shift == 0.0

    def test_random_spreads(self):
        """100 个构造上满足凸序的随机对：残差都不超过 1e-8"""
        rng = np.random.default_rng(404)
        for _ in range(100):
            X, Y = random_spread_pair(rng)
            coupling = strassen_coupling(X, Y)
            assert coupling.marginal_residual(X, Y) <= 1e-8
            assert coupling.conditional_mean_residual() <= 1e-8
            assert total_variation(coupling.x_marginal(), X) <= 1e-8
            assert total_variation(coupling.y_marginal(), Y) <= 1e-8

    def test_base_model_investors(self, base_tree, u_more, u_less):
        """基准模型两个投资者的中心化终端财富之间存在耦合"""
        X = center(solve_dp(base_tree, u_more, 1.0).terminal_dist)
        Y = center(solve_dp(base_tree, u_less, 1.0).terminal_dist)
        coupling = strassen_coupling(X, Y)
        assert coupling.marginal_residual(X, Y) <= 1e-8
        assert coupling.conditional_mean_residual() <= 1e-8
        assert coupling.shift == pytest.approx(0.0, abs=1e-12)

    def test_risk_premium_shift(self):
        """Y 整体上移时 shift 等于均值差"""
        rng = np.random.default_rng(505)
        for _ in range(20):
            X, Y = random_spread_pair(rng)
            premium = float(rng.uniform(0.0, 3.0))
            coupling = strassen_coupling(X, shift(Y, premium))
            assert coupling.shift == pytest.approx(premium, abs=1e-12)
            assert coupling.conditional_mean_residual() <= 1e-8

    def test_agrees_with_linprog(self):
        """可行性与 scipy 线性规划一致"""
        rng = np.random.default_rng(606)
        for _ in range(30):
            X, Y = random_spread_pair(rng)
            assert linprog_feasible(X, Y)
            strassen_coupling(X, Y)

    def test_reversed_pairs_are_infeasible(self):
        """20 个交换后的严格展开对：检验失败并带回判定"""
        rng = np.random.default_rng(707)
        found = 0
        while found < 20:
            X, Y = random_spread_pair(rng)
            if total_variation(X, Y) < 1e-6:
                continue
            found += 1
            assert not linprog_feasible(Y, X)
            with pytest.raises(InfeasibleCouplingError) as info:
                strassen_coupling(Y, X)
            assert info.value.verdict is not None
            assert not info.value.verdict.holds

    def test_linear_program_detects_infeasibility(self, symmetric_pair):
        """跳过序关系检验时由线性规划判定不可行"""
        X, Y = symmetric_pair
        with pytest.raises(InfeasibleCouplingError) as info:
            strassen_coupling(Y, X, verify_order=False)
        assert info.value.verdict is None
        assert info.value.residual > 1e-8
