# iid_returns/__init__.py
"""
i.i.d. 收益市场
最优常数比例、Euler 乘积的精确分布与蒙特卡洛检验
"""
from .models import IncrementDist
from .fractions import optimal_fraction
from .euler import euler_factor_dist, euler_product_dist, check_euler_order
from .monte_carlo import (
    MonteCarloSample,
    draw_outcomes,
    products_from_outcomes,
    mc_product_sample,
    default_strikes,
    mc_order_check,
)

__all__ = [
    'IncrementDist',
    'optimal_fraction',
    'euler_factor_dist',
    'euler_product_dist',
    'check_euler_order',
    'MonteCarloSample',
    'draw_outcomes',
    'products_from_outcomes',
    'mc_product_sample',
    'default_strikes',
    'mc_order_check',
]
