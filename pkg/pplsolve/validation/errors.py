"""Exception hierarchy for pplsolve."""

from typing import Optional

import numpy as np


class PplSolveError(Exception):
    """Base class for every error raised by pplsolve."""

    pass


class ContractViolation(PplSolveError):
    """Raised when a caller breaks a dimension or sign contract."""

    pass


class OracleFailure(PplSolveError):
    """Raised when a problem oracle returns non-finite output.

    Attributes:
        x: Point at which the oracle was evaluated
    """

    def __init__(self, message: str, x: np.ndarray) -> None:
        super().__init__(message)
        self.x = np.array(x, copy=True)


class DivergenceError(PplSolveError):
    """Raised when a solver iterate becomes non-finite.

    Attributes:
        iteration: Index of the first non-finite iterate
    """

    def __init__(self, message: str, iteration: int) -> None:
        super().__init__(message)
        self.iteration = iteration


class ParameterError(PplSolveError):
    """Raised when a solver parameter is outside its admissible range."""

    pass


class ConfigurationError(PplSolveError):
    """Raised for invalid run configuration or unsupported problem/method pairs."""

    pass


class ParseError(PplSolveError):
    """Raised when a dataset file cannot be parsed.

    Attributes:
        line: 1-based line number of the offending input, if known
    """

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class ConstructionError(PplSolveError):
    """Raised when a problem or dataset cannot be assembled from its inputs."""

    pass


class DomainError(PplSolveError):
    """Raised when a point lies outside the regularizer domain."""

    pass


class PreconditionViolation(PplSolveError):
    """Raised when inputs to a diagnostic do not satisfy its precondition."""

    pass


class OutputError(PplSolveError):
    """Raised when run outputs cannot be written."""

    pass
