from .error_handler import (
    DominanceError,
    InvalidParameterError,
    InvalidDistributionError,
    DomainViolationError,
    InvalidTreeError,
    ArbitrageError,
    IncompleteMarketError,
    ReplicationError,
    BudgetBracketError,
    InfeasibleCouplingError,
    EnumerationCapExceededError,
    PreconditionError,
    ConfigurationError,
    exit_code_on_error,
)

__all__ = [
    "DominanceError",
    "InvalidParameterError",
    "InvalidDistributionError",
    "DomainViolationError",
    "InvalidTreeError",
    "ArbitrageError",
    "IncompleteMarketError",
    "ReplicationError",
    "BudgetBracketError",
    "InfeasibleCouplingError",
    "EnumerationCapExceededError",
    "PreconditionError",
    "ConfigurationError",
    "exit_code_on_error",
]
