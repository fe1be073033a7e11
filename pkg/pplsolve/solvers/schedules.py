"""Diminishing delta schedules driving the auxiliary-multiplier step.

Both schedules start at delta_0 <= 1, tend to zero and have divergent partial sums.
"""

from pplsolve.validation import ParameterError


def delta_schedule_plada(k: int, kappa: float = 1.0) -> float:
    """delta_k = kappa / (k + 1).

    Example:
        >>> delta_schedule_plada(9)
        0.1
    """
    if k < 0:
        raise ParameterError(f"iteration counter must be non-negative, got {k}")
    if not 0.0 < kappa <= 1.0:
        raise ParameterError(f"kappa must lie in (0, 1], got {kappa}")
    return kappa / (k + 1)


def delta_schedule_ppala(k: int, p: float = 1.0, q: float = 1.0) -> float:
    """delta_k = 1 / (p * k**q + 1).

    Raises:
        ParameterError: If p <= 0 or q lies outside (2/3, 1]

    Example:
        >>> delta_schedule_ppala(3, p=1.0, q=1.0)
        0.25
    """
    if k < 0:
        raise ParameterError(f"iteration counter must be non-negative, got {k}")
    if not p > 0:
        raise ParameterError(f"p must be positive, got {p}")
    if not 2.0 / 3.0 < q <= 1.0:
        raise ParameterError(f"q must lie in (2/3, 1], got {q}")
    return 1.0 / (p * k**q + 1.0)
