# src/stochastic_order/__init__.py
"""
随机序模块
单调凸序、凸序检验与 Strassen 耦合
"""
from .models import OrderRelation, OrderVerdict, CouplingCell, Coupling
from .checks import (
    kink_strikes,
    default_tolerance,
    call_gap_curve,
    check_mc,
    check_convex,
    check_centered_convex,
    check_relation,
)
from .simplex import FeasibilityResult, find_feasible_point
from .coupling import strassen_coupling

__all__ = [
    "OrderRelation",
    "OrderVerdict",
    "CouplingCell",
    "Coupling",
    "kink_strikes",
    "default_tolerance",
    "call_gap_curve",
    "check_mc",
    "check_convex",
    "check_centered_convex",
    "check_relation",
    "FeasibilityResult",
    "find_feasible_point",
    "strassen_coupling",
]
