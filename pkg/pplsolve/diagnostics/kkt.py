"""KKT residuals, certificate multipliers and Lagrangian values.

The solvers never see a KKT multiplier directly. After each step a non-negative
certificate nu is rebuilt from the slack update, and the residuals of the new
primal point are measured against it.
"""

from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel

from pplsolve.objects.iterate_state import IterateState
from pplsolve.objects.kkt_report import KktReport
from pplsolve.objects.problem_spec import OracleEval, ProblemSpec, evaluate_constraints, evaluate_point
from pplsolve.objects.solver_params import SolverParams
from pplsolve.validation import ContractViolation, PreconditionViolation, validate_positive, validate_vector

# Largest negative coordinate tolerated in a constructed certificate
NU_NEGATIVE_TOL = 1e-10


def _checked_nu(nu: np.ndarray, clip: bool) -> np.ndarray:
    if nu.size and float(nu.min()) < -NU_NEGATIVE_TOL:
        raise PreconditionViolation(
            f"certificate multiplier has coordinate {float(nu.min()):.3e} < 0; "
            "the slack iterates were not produced by the matching projection step"
        )
    return np.maximum(nu, 0.0) if clip else nu


def build_nu_plada(
    lambda_k: np.ndarray,
    u_k: np.ndarray,
    u_next: np.ndarray,
    tau: float,
    clip: bool = True,
) -> np.ndarray:
    """nu = lambda_k + (u_next - u_k) / tau.

    Args:
        lambda_k: Multiplier used by the slack step
        u_k: Slack before the step
        u_next: Slack after u_next = max(0, u_k - tau * lambda_k)
        tau: Slack step size
        clip: Round coordinates within -1e-10 of zero up to zero

    Raises:
        PreconditionViolation: If a coordinate falls below -1e-10

    Example:
        >>> build_nu_plada(np.array([0.5]), np.array([0.02]), np.array([0.0]), 0.1)
        array([0.3])
    """
    validate_positive(tau, "tau")
    nu = np.asarray(lambda_k, dtype=np.float64) + (np.asarray(u_next) - np.asarray(u_k)) / tau
    return _checked_nu(nu, clip)


def build_nu_ppala(
    lambda_k: np.ndarray,
    lambda_next: np.ndarray,
    mu_next: np.ndarray,
    u_k: np.ndarray,
    u_next: np.ndarray,
    tau: float,
    rho: float,
    clip: bool = True,
) -> np.ndarray:
    """nu = lambda_k + lambda_next - mu_next + (1/tau - rho) (u_next - u_k).

    Vanishes exactly when the slack step was not clipped.

    Raises:
        PreconditionViolation: If a coordinate falls below -1e-10
    """
    validate_positive(tau, "tau")
    validate_positive(rho, "rho")
    nu = (
        np.asarray(lambda_k, dtype=np.float64)
        + np.asarray(lambda_next)
        - np.asarray(mu_next)
        + (1.0 / tau - rho) * (np.asarray(u_next) - np.asarray(u_k))
    )
    return _checked_nu(nu, clip)


def kkt_residuals(
    problem: ProblemSpec,
    x: np.ndarray,
    nu: np.ndarray,
    eta_ref: float,
    dual_gap: float = 0.0,
    point: Optional[OracleEval] = None,
) -> KktReport:
    """Epsilon-KKT residuals of x against the certificate nu.

    stationarity = ||x - prox(x - eta_ref (grad f + J^T nu))|| / eta_ref, which is
    zero exactly when 0 lies in grad f + d r + J^T nu.

    Args:
        problem: Problem instance
        x: Primal point
        nu: Non-negative certificate multiplier
        eta_ref: Reference step of the prox-gradient residual
        dual_gap: ||lambda - mu|| of the iterate, copied into the report
        point: Oracle evaluation at x, reused when supplied

    Raises:
        ContractViolation: If nu has a negative coordinate or the wrong length
    """
    nu = validate_vector(nu, problem.num_constraints, "nu")
    if np.any(nu < 0):
        raise ContractViolation(f"nu must be non-negative, got min coordinate {float(nu.min()):.3e}")
    validate_positive(eta_ref, "eta_ref")
    if point is None:
        point = evaluate_point(problem, x)

    direction = point.grad + point.jac.T @ nu
    mapped = problem.regularizer.prox(point.x - eta_ref * direction, eta_ref)
    stationarity = float(np.linalg.norm(point.x - mapped)) / eta_ref
    feasibility = float(np.linalg.norm(np.maximum(point.g, 0.0)))
    complementarity = float(np.sum(np.abs(nu * point.g)))
    return KktReport(
        stationarity=stationarity,
        feasibility=feasibility,
        complementarity=complementarity,
        dual_gap=dual_gap,
        nu=nu,
    )


def _lagrangian_parts(problem: ProblemSpec, state: IterateState) -> Tuple[float, np.ndarray]:
    point = evaluate_point(problem, state.x)
    return point.f + problem.regularizer.value(state.x), point.g + state.u


def eval_p_lagrangian(problem: ProblemSpec, state: IterateState, alpha: float, beta: float) -> float:
    """f + <lam, g + u - z> + <mu, z> + (alpha/2)||z||^2 - (beta/2)||lam - mu||^2 + r.

    Raises:
        DomainError: If x lies outside the regularizer domain
    """
    objective, residual = _lagrangian_parts(problem, state)
    gap = state.lam - state.mu
    return float(
        objective
        + state.lam @ (residual - state.z)
        + state.mu @ state.z
        + 0.5 * alpha * (state.z @ state.z)
        - 0.5 * beta * (gap @ gap)
    )


def eval_ppal(problem: ProblemSpec, state: IterateState, alpha: float, beta: float, rho: float) -> float:
    """eval_p_lagrangian plus the augmentation (rho/2)||g + u||^2."""
    _, residual = _lagrangian_parts(problem, state)
    return eval_p_lagrangian(problem, state, alpha, beta) + 0.5 * rho * float(residual @ residual)


def eval_reduced_p_lagrangian(problem: ProblemSpec, state: IterateState, alpha: float, beta: float) -> float:
    """P-Lagrangian with z replaced by its minimizer (lam - mu) / alpha.

    Equals f + r + <lam, g + u> - ||lam - mu||^2 / (2 rho); the state's own z is ignored.
    """
    objective, residual = _lagrangian_parts(problem, state)
    gap = state.lam - state.mu
    rho = alpha / (1.0 + alpha * beta)
    return float(objective + state.lam @ residual - (gap @ gap) / (2.0 * rho))


def eval_reduced_ppal(problem: ProblemSpec, state: IterateState, alpha: float, beta: float) -> float:
    """Reduced P-Lagrangian plus (rho/2)||g + u||^2."""
    _, residual = _lagrangian_parts(problem, state)
    rho = alpha / (1.0 + alpha * beta)
    return eval_reduced_p_lagrangian(problem, state, alpha, beta) + 0.5 * rho * float(residual @ residual)


class ViolationStats(BaseModel):
    """Mean and maximum of the positive parts of the constraint values."""

    mean: float
    max: float


def constraint_violation_stats(problem: ProblemSpec, x: np.ndarray) -> ViolationStats:
    """Average and worst violation over the constraint rows."""
    values, _ = evaluate_constraints(problem, x)
    positive = np.maximum(values, 0.0)
    return ViolationStats(mean=float(positive.mean()), max=float(positive.max()))


def closure_residuals(problem: ProblemSpec, state: IterateState, params: SolverParams) -> Tuple[float, float]:
    """Distances from the two identities every completed step restores.

    Returns:
        (||(lam - mu) - rho (g(x) + u)||, ||z - (lam - mu) / alpha||)
    """
    values, _ = evaluate_constraints(problem, state.x)
    gap = state.lam - state.mu
    lambda_closure = float(np.linalg.norm(gap - params.rho * (values + state.u)))
    z_closure = float(np.linalg.norm(state.z - gap / params.alpha))
    return lambda_closure, z_closure
