# utility/__init__.py
from .models import UtilityKind, UtilityDomain, RiskComparison, UtilitySpec
from .calculus import (
    evaluate,
    marginal,
    second_derivative,
    inverse_marginal,
    ara,
    more_risk_averse,
    scalar_functions,
)

__all__ = [
    'UtilityKind',
    'UtilityDomain',
    'RiskComparison',
    'UtilitySpec',
    'evaluate',
    'marginal',
    'second_derivative',
    'inverse_marginal',
    'ara',
    'more_risk_averse',
    'scalar_functions',
]
