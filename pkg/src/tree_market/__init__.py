# tree_market/__init__.py
"""
事件树市场模块
有限多期市场的表示、无套利校验、唯一鞅测度与扰动构造
"""
from .models import TreeNode, EventTree, ValidationReport, EmmDensity
from .validation import validate_tree, require_arbitrage_free, is_complete_node
from .martingale import unique_emm
from .constructions import (
    ProbabilityConvention,
    build_base_example,
    build_inserted_branch,
    build_perturbed_example,
    perturb,
    build_iid_tree,
)
from .io import load_tree, dump_tree

__all__ = [
    'TreeNode',
    'EventTree',
    'ValidationReport',
    'EmmDensity',
    'validate_tree',
    'require_arbitrage_free',
    'is_complete_node',
    'unique_emm',
    'ProbabilityConvention',
    'build_base_example',
    'build_inserted_branch',
    'build_perturbed_example',
    'perturb',
    'build_iid_tree',
    'load_tree',
    'dump_tree',
]
