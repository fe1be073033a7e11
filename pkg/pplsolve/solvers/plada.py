"""Single-loop primal-dual solver for problems with non-smooth constraints.

Each step updates, in order, the primal point x, the slack u, the auxiliary
multiplier mu, the multiplier lambda and the perturbation z:

    x+  = prox_{eta r}(x - eta (grad f(x) + J(x)^T lam))       (linearized mode)
    u+  = max(0, u - tau lam)
    mu+ = mu + gamma_k (lam - mu),  gamma_k = min(gamma0, delta_k / (||lam - mu||^2 + 1))
    lam+ = mu+ + rho (g(x+) + u+)
    z+  = (lam+ - mu+) / alpha

with delta_k = kappa / (k + 1). Only a subgradient selection of g is needed.
"""

from typing import Optional

import numpy as np

from pplsolve.diagnostics.kkt import build_nu_plada
from pplsolve.objects.iterate_state import IterateState
from pplsolve.objects.problem_spec import OracleEval, ProblemSpec, evaluate_point
from pplsolve.objects.solve_result import SolveResult
from pplsolve.objects.solver_params import PladaParams
from pplsolve.solvers.loop import (
    StepObserver,
    StepOutcome,
    TraceSink,
    ensure_finite_iterate,
    project_multiplier,
    run_loop,
)
from pplsolve.solvers.schedules import delta_schedule_plada
from pplsolve.validation import ConfigurationError, validate_vector


def _x_update(problem: ProblemSpec, state: IterateState, point: OracleEval, params: PladaParams) -> np.ndarray:
    if params.x_update_mode == "exact-subproblem":
        if problem.exact_x_update is None:
            raise ConfigurationError(f"{problem.name} provides no exact x-subproblem solver")
        x_next = problem.exact_x_update(state.x, point.grad, state.lam, params.eta)
        return validate_vector(x_next, problem.dimension, "exact x-update")
    direction = point.grad + point.jac.T @ state.lam
    return problem.regularizer.prox(state.x - params.eta * direction, params.eta)


def advance_plada(problem: ProblemSpec, state: IterateState, point: OracleEval, params: PladaParams) -> StepOutcome:
    """One step from ``state`` given the oracle evaluation ``point`` at state.x."""
    iteration = state.k + 1
    delta = delta_schedule_plada(state.k, params.kappa)

    x_next = _x_update(problem, state, point, params)
    ensure_finite_iterate(x_next, iteration, "x")
    next_point = evaluate_point(problem, x_next)

    u_next = np.maximum(0.0, state.u - params.tau * state.lam)

    gap = state.lam - state.mu
    coeff = min(params.gamma0, delta / (float(gap @ gap) + 1.0))
    mu_next = state.mu + coeff * gap

    lam_next = project_multiplier(mu_next + params.rho * (next_point.g + u_next), params.lambda_cap)
    z_next = (lam_next - mu_next) / params.alpha

    nu = build_nu_plada(state.lam, state.u, u_next, params.tau)
    next_state = IterateState(x=x_next, u=u_next, z=z_next, lam=lam_next, mu=mu_next, k=iteration)
    return StepOutcome(state=next_state, point=next_point, nu=nu, delta=delta, coeff=coeff)


def plada_step(problem: ProblemSpec, state: IterateState, params: PladaParams) -> IterateState:
    """Apply one PLADA step to ``state``.

    Raises:
        OracleFailure: If an oracle returns non-finite output
        DivergenceError: If an iterate becomes non-finite

    Example:
        >>> toy = make_linear_toy()
        >>> zero = IterateState(x=[0.0], u=[0.0], z=[0.0], lam=[0.0], mu=[0.0])
        >>> plada_step(toy, zero, params).lam   # rho=5, eta=tau=0.1
        array([-0.5])
    """
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        outcome = advance_plada(problem, state, evaluate_point(problem, state.x), params)
    return outcome.state


def run_plada(
    problem: ProblemSpec,
    params: PladaParams,
    x0: Optional[np.ndarray] = None,
    trace_sink: Optional[TraceSink] = None,
    observer: Optional[StepObserver] = None,
    trace_every: int = 1,
) -> SolveResult:
    """Run PLADA from ``x0`` (domain center when omitted).

    Args:
        problem: Problem instance
        params: Solver parameters
        x0: Starting point inside the regularizer domain
        trace_sink: Receives every emitted trace row
        observer: Called with (previous state, step outcome) after every step
        trace_every: Emit every n-th row (the final row is always emitted)

    Returns:
        SolveResult with stop reason "converged" or "budget"

    Raises:
        DivergenceError: If an iterate becomes non-finite
        ConfigurationError: If exact-subproblem mode is requested without a solver
    """
    if params.x_update_mode == "exact-subproblem" and problem.exact_x_update is None:
        raise ConfigurationError(f"{problem.name} provides no exact x-subproblem solver")
    start = problem.default_x0() if x0 is None else x0
    return run_loop(
        "plada",
        problem,
        params,
        start,
        lambda prob, state, point: advance_plada(prob, state, point, params),
        delta_schedule_plada(0, params.kappa),
        trace_sink=trace_sink,
        observer=observer,
        trace_every=trace_every,
    )
