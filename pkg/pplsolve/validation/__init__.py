"""Error types and validators for pplsolve."""

from pplsolve.validation.errors import (
    ConfigurationError,
    ConstructionError,
    ContractViolation,
    DivergenceError,
    DomainError,
    OracleFailure,
    OutputError,
    ParameterError,
    ParseError,
    PplSolveError,
    PreconditionViolation,
)
from pplsolve.validation.validators import ensure_finite, validate_matrix, validate_positive, validate_vector

__all__ = [
    "PplSolveError",
    "ContractViolation",
    "OracleFailure",
    "DivergenceError",
    "ParameterError",
    "ConfigurationError",
    "ParseError",
    "ConstructionError",
    "DomainError",
    "PreconditionViolation",
    "OutputError",
    "validate_vector",
    "validate_matrix",
    "ensure_finite",
    "validate_positive",
]
