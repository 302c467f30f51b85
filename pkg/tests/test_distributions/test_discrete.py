"""
离散分布测试
"""
import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings

from src.distributions.discrete import (
    DiscreteDist,
    call_value,
    call_values,
    center,
    mean,
    merge_atoms,
    product_independent,
    put_value,
    scale_center,
    shift,
    total_variation,
    variance,
)
from src.utils.error_handler import InvalidDistributionError, InvalidParameterError
from tests.utils.generators import distributions


class TestConstruction:
    """构造与不变量"""

    def test_from_atoms_sorts_and_merges(self):
        """乱序原子排序，相近取值合并且均值不变"""
        d = DiscreteDist.from_atoms([3.0, 1.0, 1.0 + 1e-14, 2.0], [0.25, 0.25, 0.25, 0.25])
        assert len(d) == 3
        assert np.all(np.diff(d.values) > 0)
        assert d.probs[0] == pytest.approx(0.5)
        assert mean(d) == pytest.approx(1.75, abs=1e-13)

    def test_zero_probability_atoms_dropped(self):
        """零概率原子被丢弃"""
        d = DiscreteDist.from_atoms([0.0, 5.0, 7.0], [0.5, 0.0, 0.5])
        assert d.atoms == [(0.0, 0.5), (7.0, 0.5)]

    def test_renormalizes_within_tolerance(self):
        """概率和在容差内偏离1时重新归一化"""
        d = DiscreteDist.from_atoms([0.0, 1.0], [0.5, 0.5 + 5e-10])
        assert d.probs.sum() == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize(
        "values,probs",
        [
            ([0.0, 1.0], [0.5, 0.6]),
            ([0.0, 1.0], [1.2, -0.2]),
            ([0.0, np.inf], [0.5, 0.5]),
            ([0.0, 1.0], [0.0, 0.0]),
            ([0.0], [0.5, 0.5]),
        ],
    )
    def test_invalid_atoms_rejected(self, values, probs):
        """非法概率或取值"""
        with pytest.raises(InvalidDistributionError):
            DiscreteDist.from_atoms(values, probs)

    def test_direct_constructor_requires_sorted(self):
        """直接构造要求严格递增"""
        with pytest.raises(InvalidDistributionError):
            DiscreteDist(np.array([1.0, 0.0]), np.array([0.5, 0.5]))

    def test_immutable_arrays(self):
        """取值数组只读"""
        d = DiscreteDist.from_pairs([(0.0, 0.5), (1.0, 0.5)])
        with pytest.raises(ValueError):
            d.values[0] = 3.0

    def test_merge_atoms_keeps_singletons_exact(self):
        """单原子组保留原值"""
        values, probs = merge_atoms([0.1, 0.7], [0.3, 0.7])
        assert values.tolist() == [0.1, 0.7]
        assert probs.tolist() == [0.3, 0.7]


class TestCallsAndMoments:
    """看涨期权价值与矩"""

    def test_call_put_parity(self):
        """call − put = E[X] − K"""
        d = DiscreteDist.from_pairs([(-2.0, 0.2), (1.0, 0.5), (4.0, 0.3)])
        for k in (-5.0, -2.0, 0.3, 1.0, 3.9, 10.0):
            assert call_value(d, k) - put_value(d, k) == pytest.approx(mean(d) - k, abs=1e-14)

    def test_call_limits(self):
        """K 低于支撑时等于均值差，高于支撑时为0"""
        d = DiscreteDist.from_pairs([(1.0, 0.5), (3.0, 0.5)])
        assert call_value(d, 0.0) == pytest.approx(2.0)
        assert call_value(d, 3.0) == 0.0
        assert call_values(d, [0.0, 2.0, 5.0]).tolist() == pytest.approx([2.0, 0.5, 0.0])

    def test_variance(self):
        """二点分布方差"""
        d = DiscreteDist.from_pairs([(-1.0, 0.5), (1.0, 0.5)])
        assert variance(d) == pytest.approx(1.0)

    @hyp_settings(max_examples=200, deadline=None)
    @given(distributions())
    def test_call_convex_nonincreasing(self, d):
        """看涨价值关于执行价凸且不增"""
        ks = np.linspace(d.support_min - 1, d.support_max + 1, 41)
        c = call_values(d, ks)
        assert np.all(np.diff(c) <= 1e-12)
        assert np.all(c[:-2] - 2 * c[1:-1] + c[2:] >= -1e-12)


class TestTransforms:
    """平移、中心化、保均值放大与独立乘积"""

    def test_shift_and_center(self):
        """中心化后均值为0"""
        d = DiscreteDist.from_pairs([(2.0, 0.25), (6.0, 0.75)])
        assert mean(shift(d, 1.5)) == pytest.approx(mean(d) + 1.5)
        assert mean(center(d)) == pytest.approx(0.0, abs=1e-15)

    def test_scale_center_preserves_mean(self):
        """aX − (a−1)E[X] 均值不变，方差乘 a²"""
        d = DiscreteDist.from_pairs([(0.0, 0.3), (1.0, 0.3), (5.0, 0.4)])
        s = scale_center(d, 3.0)
        assert mean(s) == pytest.approx(mean(d), abs=1e-13)
        assert variance(s) == pytest.approx(9.0 * variance(d))
        assert scale_center(d, 1.0) is d

    def test_scale_center_rejects_contraction(self):
        """a < 1 非法"""
        with pytest.raises(InvalidParameterError):
            scale_center(DiscreteDist.point_mass(1.0), 0.5)

    def test_product_independent(self):
        """独立乘积合并相同取值"""
        d = DiscreteDist.from_pairs([(-1.0, 0.5), (1.0, 0.5)])
        prod = product_independent(d, d)
        assert prod.atoms == [(-1.0, 0.5), (1.0, 0.5)]
        z = DiscreteDist.from_pairs([(2.0, 0.5), (3.0, 0.5)])
        assert mean(product_independent(d, z)) == pytest.approx(mean(d) * mean(z))

    def test_total_variation(self):
        """全变差距离"""
        a = DiscreteDist.from_pairs([(0.0, 0.5), (1.0, 0.5)])
        b = DiscreteDist.from_pairs([(0.0, 0.25), (2.0, 0.75)])
        assert total_variation(a, a) == 0.0
        assert total_variation(a, b) == pytest.approx(0.75)
