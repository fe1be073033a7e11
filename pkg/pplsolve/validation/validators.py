"""Array and contract validators shared by the problem model and solvers."""

from typing import Optional

import numpy as np

from pplsolve.validation.errors import ContractViolation, OracleFailure, ParameterError


def validate_vector(v: np.ndarray, length: int, name: str = "vector") -> np.ndarray:
    """Return ``v`` as a 1-D float64 array of the expected length.

    Raises:
        ContractViolation: If the shape does not match

    Example:
        >>> validate_vector(np.array([1, 2]), 2).dtype
        dtype('float64')
    """
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1 or arr.shape[0] != length:
        raise ContractViolation(f"{name} must have shape ({length},), got {arr.shape}")
    return arr


def validate_matrix(a: np.ndarray, rows: int, cols: int, name: str = "matrix") -> np.ndarray:
    """Return ``a`` as a 2-D float64 array of shape (rows, cols).

    Raises:
        ContractViolation: If the shape does not match
    """
    arr = np.asarray(a, dtype=np.float64)
    if arr.shape != (rows, cols):
        raise ContractViolation(f"{name} must have shape ({rows}, {cols}), got {arr.shape}")
    return arr


def ensure_finite(values: np.ndarray, x: np.ndarray, what: str) -> None:
    """Raise OracleFailure carrying ``x`` if ``values`` holds NaN or inf."""
    if not np.all(np.isfinite(values)):
        raise OracleFailure(f"{what} oracle returned non-finite output", x)


def validate_positive(value: float, name: str, upper: Optional[float] = None) -> float:
    """Check ``0 < value`` (and ``value <= upper`` when given).

    Raises:
        ParameterError: If the value is out of range
    """
    if not value > 0:
        raise ParameterError(f"{name} must be positive, got {value}")
    if upper is not None and value > upper:
        raise ParameterError(f"{name} must be <= {upper}, got {value}")
    return float(value)
