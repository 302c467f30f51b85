# portfolio_solver/__init__.py
"""
最优投资求解模块
逆向动态规划（任意事件树）与完备市场对偶法
"""
from .models import ControlKind, SolveMethod, Policy, Solution, terminal_distribution
from .scalar_search import (
    ScalarSearchResult,
    admissible_fraction_interval,
    golden_section_maximize,
    newton_polish,
    maximize_on_interval,
    expand_symmetric_bracket,
)
from .one_step import one_step_objective, solve_one_step
from .dynamic_programming import control_kind_for, solve_dp
from .dual import replicate, solve_complete_dual

__all__ = [
    'ControlKind',
    'SolveMethod',
    'Policy',
    'Solution',
    'terminal_distribution',
    'ScalarSearchResult',
    'admissible_fraction_interval',
    'golden_section_maximize',
    'newton_polish',
    'maximize_on_interval',
    'expand_symmetric_bracket',
    'one_step_objective',
    'solve_one_step',
    'control_kind_for',
    'solve_dp',
    'replicate',
    'solve_complete_dual',
]
