"""
单调凸序与凸序检验测试
"""
import math

import numpy as np
import pytest

from src.distributions.discrete import DiscreteDist
from src.stochastic_order.checks import (
    call_gap_curve,
    check_centered_convex,
    check_convex,
    check_mc,
    check_relation,
    default_tolerance,
    kink_strikes,
)
from src.stochastic_order.models import OrderRelation
from src.utils.error_handler import InvalidParameterError


class TestCheckMC:
    """X ≤_MC Y"""

    def test_spread_around_point(self):
        """点质量 2 ≤_MC 等概率 {1, 3}，在拐点 1 处取等"""
        X = DiscreteDist.point_mass(2.0)
        Y = DiscreteDist.from_pairs([(1.0, 0.5), (3.0, 0.5)])
        verdict = check_mc(X, Y)
        assert verdict.holds
        assert verdict.min_gap == pytest.approx(0.0, abs=1e-15)
        assert verdict.relation is OrderRelation.MONOTONE_CONVEX
        assert verdict.boundary

    def test_identical_distributions(self):
        """X ≤_MC X，最小看涨差为0"""
        X = DiscreteDist.from_pairs([(-3.0, 0.2), (0.5, 0.3), (7.0, 0.5)])
        verdict = check_mc(X, X)
        assert verdict.holds
        assert verdict.min_gap == 0.0

    def test_mean_failure_reports_minus_infinity(self):
        """E[X] > E[Y] 时见证执行价为 −inf"""
        verdict = check_mc(DiscreteDist.point_mass(0.0), DiscreteDist.point_mass(-1.0))
        assert not verdict.holds
        assert verdict.mean_gap == pytest.approx(-1.0)
        assert verdict.witness_strike == -math.inf

    def test_upper_tail_failure(self):
        """X 的右尾更重时在尾部执行价失效"""
        X = DiscreteDist.from_pairs([(0.0, 0.9), (10.0, 0.1)])
        Y = DiscreteDist.from_pairs([(1.0, 0.5), (2.0, 0.5)])
        verdict = check_mc(X, Y)
        assert not verdict.holds
        assert verdict.mean_gap > 0
        assert verdict.witness_strike == pytest.approx(2.0)
        assert verdict.min_gap == pytest.approx(-0.8)

    def test_shift_up_is_dominating(self):
        """Y = X + c（c ≥ 0）时成立且非边界"""
        X = DiscreteDist.from_pairs([(0.0, 0.5), (1.0, 0.5)])
        Y = DiscreteDist.from_pairs([(0.5, 0.5), (1.5, 0.5)])
        verdict = check_mc(X, Y)
        assert verdict.holds
        assert not verdict.boundary

    def test_explicit_tolerance(self):
        """显式容差覆盖默认值，非正容差非法"""
        X = DiscreteDist.point_mass(0.0)
        Y = DiscreteDist.point_mass(-1e-6)
        assert not check_mc(X, Y).holds
        assert check_mc(X, Y, tol=1e-5).holds
        with pytest.raises(InvalidParameterError):
            check_mc(X, Y, tol=0.0)


class TestCheckConvex:
    """X ≤_C Y 与中心化凸序"""

    def test_symmetric_spread(self, symmetric_pair):
        """0 ≤_C ±1；并列最小值取最大的执行价"""
        X, Y = symmetric_pair
        verdict = check_convex(X, Y)
        assert verdict.holds
        assert verdict.min_gap == pytest.approx(0.0, abs=1e-15)
        assert verdict.mean_gap == pytest.approx(0.0, abs=1e-15)
        assert verdict.witness_strike == 1.0

    def test_reverse_fails(self, symmetric_pair):
        """±1 ≤_C 0 不成立，见证执行价为0"""
        X, Y = symmetric_pair
        verdict = check_convex(Y, X)
        assert not verdict.holds
        assert verdict.witness_strike == 0.0
        assert verdict.min_gap == pytest.approx(-0.5)

    def test_mean_mismatch(self):
        """均值不同：MC 成立但 C 不成立"""
        X = DiscreteDist.point_mass(0.0)
        Y = DiscreteDist.point_mass(1.0)
        assert check_mc(X, Y).holds
        assert not check_convex(X, Y).holds

    def test_centered(self):
        """中心化后比较，均值差不影响判定"""
        X = DiscreteDist.point_mass(5.0)
        Y = DiscreteDist.from_pairs([(-1.0, 0.5), (1.0, 0.5)])
        assert not check_convex(X, Y).holds
        verdict = check_centered_convex(X, Y)
        assert verdict.holds
        assert verdict.relation is OrderRelation.CENTERED_CONVEX
        assert verdict.tolerance == default_tolerance(X, Y)

    @pytest.mark.parametrize("relation", list(OrderRelation))
    def test_dispatch(self, relation, symmetric_pair):
        """按名称分派"""
        X, Y = symmetric_pair
        assert check_relation(X, Y, relation).relation is relation
        assert check_relation(X, Y, relation.value).holds


class TestGapCurve:
    """看涨差曲线"""

    def test_kinks_are_support_union(self):
        """拐点为两个支撑的并集"""
        X = DiscreteDist.from_pairs([(0.0, 0.5), (2.0, 0.5)])
        Y = DiscreteDist.from_pairs([(1.0, 0.5), (2.0, 0.5)])
        assert kink_strikes(X, Y).tolist() == [0.0, 1.0, 2.0]

    def test_gap_is_difference_of_calls(self):
        """gap = call_y − call_x，最大拐点处为0"""
        X = DiscreteDist.from_pairs([(0.0, 0.5), (2.0, 0.5)])
        Y = DiscreteDist.from_pairs([(-1.0, 0.5), (4.0, 0.5)])
        strikes = kink_strikes(X, Y)
        call_x, call_y, gap = call_gap_curve(X, Y, strikes)
        assert np.allclose(gap, call_y - call_x)
        assert gap[-1] == 0.0

    def test_default_tolerance_scales_with_mean(self):
        """默认容差按均值放大"""
        X = DiscreteDist.point_mass(1000.0)
        assert default_tolerance(X, X) == pytest.approx(1e-6)
        assert default_tolerance(DiscreteDist.point_mass(0.1), DiscreteDist.point_mass(0.2)) == pytest.approx(1e-9)
