"""Per-iteration inequality checks on consecutive solver iterates.

These turn the relations the convergence analysis relies on into runtime
checks: bounds on the auxiliary-multiplier step, the multiplier increment, and
the approximate decrease of the (augmented) Lagrangian. They only hold once the
closure identity lam - mu = rho (g(x) + u) is in force, which is from the first
completed iteration onward.
"""

from typing import Dict, List, Literal, Sequence, Tuple

import numpy as np
from pydantic import BaseModel

from pplsolve.diagnostics.kkt import eval_p_lagrangian, eval_ppal
from pplsolve.objects.constants import ConstantEstimates
from pplsolve.objects.iterate_state import IterateState
from pplsolve.objects.problem_spec import ProblemSpec
from pplsolve.objects.solver_params import SolverParams, ppala_lipschitz

Mode = Literal["plada", "ppala"]

CHECK_TOL = 1e-9


class RelationCheck(BaseModel):
    """One inequality (or equality) lhs <= rhs."""

    lhs: float
    rhs: float
    passed: bool


class RelationReport(BaseModel):
    """Outcome of the four iterate relations for one step."""

    checks: Dict[str, RelationCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks.values())

    def failed(self) -> List[str]:
        return [name for name, check in self.checks.items() if not check.passed]


class DescentCheck(BaseModel):
    """Approximate-decrease check of the Lagrangian for one step.

    Attributes:
        passed: slack >= -1e-9
        slack: bound - (L_next - L_prev)
        bound: -c1 dx**2 - c2 du**2 + delta_hat
    """

    passed: bool
    slack: float
    bound: float


def _within(lhs: float, rhs: float) -> bool:
    return lhs <= rhs + CHECK_TOL * max(1.0, abs(rhs))


def mu_step_coefficient(prev: IterateState, params: SolverParams, delta_k: float, mode: Mode) -> float:
    """gamma_k (capped by gamma0) in plada mode, sigma_k in ppala mode."""
    gap = prev.lam - prev.mu
    coeff = delta_k / (float(gap @ gap) + 1.0)
    if mode == "plada":
        coeff = min(float(getattr(params, "gamma0", 1.0)), coeff)
    return coeff


def check_iterate_relations(
    prev: IterateState,
    next_state: IterateState,
    params: SolverParams,
    constants: ConstantEstimates,
    delta_k: float,
    mode: Mode,
) -> RelationReport:
    """Evaluate the step relations with tolerance 1e-9.

    - mu_step:     ||mu+ - mu||^2 <= delta_k^2 / 4
    - coefficient: coeff ||lam - mu||^2 <= delta_k
    - mu_contraction: ||mu+ - lam|| = (1 - coeff) ||lam - mu||
    - lambda_step: ||lam+ - lam||^2 <= 3 rho^2 M_g^2 ||dx||^2 + 3 rho^2 ||du||^2 + extra,
      extra = 3 delta_k^2 / 4 (ppala) or 3 coeff^2 ||lam - mu||^2 (plada)
    """
    coeff = mu_step_coefficient(prev, params, delta_k, mode)
    gap_sq = float(np.sum((prev.lam - prev.mu) ** 2))
    rho = params.rho

    mu_step = float(np.sum((next_state.mu - prev.mu) ** 2))
    contraction = float(np.linalg.norm(next_state.mu - prev.lam))
    expected_contraction = (1.0 - coeff) * np.sqrt(gap_sq)

    dx_sq = float(np.sum((next_state.x - prev.x) ** 2))
    du_sq = float(np.sum((next_state.u - prev.u) ** 2))
    extra = 0.75 * delta_k**2 if mode == "ppala" else 3.0 * coeff**2 * gap_sq
    lambda_bound = 3.0 * rho**2 * constants.M_g**2 * dx_sq + 3.0 * rho**2 * du_sq + extra
    lambda_step = float(np.sum((next_state.lam - prev.lam) ** 2))

    checks = {
        "mu_step": RelationCheck(lhs=mu_step, rhs=0.25 * delta_k**2, passed=_within(mu_step, 0.25 * delta_k**2)),
        "coefficient": RelationCheck(lhs=coeff * gap_sq, rhs=delta_k, passed=_within(coeff * gap_sq, delta_k)),
        "mu_contraction": RelationCheck(
            lhs=contraction,
            rhs=float(expected_contraction),
            passed=abs(contraction - expected_contraction) <= CHECK_TOL * max(1.0, float(expected_contraction)),
        ),
        "lambda_step": RelationCheck(lhs=lambda_step, rhs=lambda_bound, passed=_within(lambda_step, lambda_bound)),
    }
    return RelationReport(checks=checks)


def descent_coefficients(
    constants: ConstantEstimates, params: SolverParams, delta_k: float, mode: Mode
) -> Tuple[float, float, float]:
    """(c1, c2, delta_hat) of the approximate-decrease inequality.

    plada: c1 = (1/eta - L_f - 3 rho M_g^2) / 2, c2 = (1/tau - 3 rho) / 2,
           delta_hat = delta^2 / (2 rho) + delta / rho
    ppala: c1 = (1/eta - L_l - 3 rho M_g^2) / 2, c2 = 1/tau - 2 rho,
           delta_hat = delta^2 / (4 rho) + delta / rho
    """
    rho = params.rho
    if mode == "plada":
        c1 = 0.5 * (1.0 / params.eta - constants.L_f - 3.0 * rho * constants.M_g**2)
        c2 = 0.5 * (1.0 / params.tau - 3.0 * rho)
        delta_hat = delta_k**2 / (2.0 * rho) + delta_k / rho
    else:
        c1 = 0.5 * (1.0 / params.eta - ppala_lipschitz(constants, rho) - 3.0 * rho * constants.M_g**2)
        c2 = 1.0 / params.tau - 2.0 * rho
        delta_hat = delta_k**2 / (4.0 * rho) + delta_k / rho
    return c1, c2, delta_hat


def check_descent(
    L_prev: float,
    L_next: float,
    dx_norm: float,
    du_norm: float,
    constants: ConstantEstimates,
    params: SolverParams,
    delta_k: float,
    mode: Mode,
) -> DescentCheck:
    """Check L_next - L_prev <= -c1 dx^2 - c2 du^2 + delta_hat + 1e-9.

    Example:
        >>> check_descent(1.0, 1.0, 0.0, 0.0, constants, params, 0.5, "plada").slack
        0.125  # delta_hat for rho = 5
    """
    c1, c2, delta_hat = descent_coefficients(constants, params, delta_k, mode)
    bound = -c1 * dx_norm**2 - c2 * du_norm**2 + delta_hat
    slack = bound - (L_next - L_prev)
    return DescentCheck(passed=slack >= -CHECK_TOL, slack=slack, bound=bound)


def lagrangian_value(problem: ProblemSpec, state: IterateState, params: SolverParams, mode: Mode) -> float:
    """P-Lagrangian in plada mode, augmented P-Lagrangian in ppala mode, evaluated fresh."""
    if mode == "plada":
        return eval_p_lagrangian(problem, state, params.alpha, params.beta)
    return eval_ppal(problem, state, params.alpha, params.beta, params.rho)


def window_ranges(values: Sequence[float], window: int = 1000, start: int = 10000) -> List[float]:
    """max - min of ``values`` over consecutive windows beginning at index ``start``."""
    arr = np.asarray(values, dtype=np.float64)
    ranges = []
    for lo in range(start, arr.shape[0] - window + 1, window):
        chunk = arr[lo : lo + window]
        ranges.append(float(chunk.max() - chunk.min()))
    return ranges


def lagrangian_window_trend(
    values: Sequence[float], window: int = 1000, start: int = 10000, factor: float = 2.0, floor: float = 1e-10
) -> bool:
    """True when each window's range is at most ``factor`` times the previous one plus ``floor``.

    Ranges below ``floor`` are roundoff of a settled run.
    """
    ranges = window_ranges(values, window, start)
    return all(later <= factor * earlier + floor for earlier, later in zip(ranges, ranges[1:]))
