"""Single-loop primal-dual solver for problems with smooth constraints.

The primal step is a prox-gradient step on the augmented Lagrangian, the slack
step includes the augmentation, and the auxiliary multiplier moves with the
uncapped coefficient sigma_k = delta_k / (||lam - mu||^2 + 1), where
delta_k = 1 / (p k**q + 1).
"""

from typing import Optional

import numpy as np

from pplsolve.diagnostics.kkt import build_nu_ppala
from pplsolve.objects.iterate_state import IterateState
from pplsolve.objects.problem_spec import OracleEval, ProblemSpec, evaluate_point
from pplsolve.objects.solve_result import SolveResult
from pplsolve.objects.solver_params import PpalaParams
from pplsolve.solvers.loop import (
    StepObserver,
    StepOutcome,
    TraceSink,
    ensure_finite_iterate,
    project_multiplier,
    run_loop,
)
from pplsolve.solvers.schedules import delta_schedule_ppala
from pplsolve.validation import ConfigurationError


def _require_smooth(problem: ProblemSpec) -> None:
    if problem.smoothness != "smooth":
        raise ConfigurationError(f"ppala needs smooth constraints; {problem.name} is non-smooth")


def _augmented_gradient(point: OracleEval, state: IterateState, rho: float) -> np.ndarray:
    return point.grad + point.jac.T @ (state.lam + rho * (point.g + state.u))


def grad_ppal_x(problem: ProblemSpec, state: IterateState, rho: float) -> np.ndarray:
    """grad f(x) + J(x)^T (lam + rho (g(x) + u)).

    Example:
        >>> state = IterateState(x=[1.0, 0.0], u=[0.0], z=[0.0], lam=[2.0], mu=[0.0])
        >>> grad_ppal_x(make_disk_problem(), state, 5.0)
        array([5., 1.])
    """
    _require_smooth(problem)
    return _augmented_gradient(evaluate_point(problem, state.x), state, rho)


def advance_ppala(problem: ProblemSpec, state: IterateState, point: OracleEval, params: PpalaParams) -> StepOutcome:
    """One step from ``state`` given the oracle evaluation ``point`` at state.x."""
    iteration = state.k + 1
    delta = delta_schedule_ppala(state.k, params.p, params.q)

    gradient = _augmented_gradient(point, state, params.rho)
    x_next = problem.regularizer.prox(state.x - params.eta * gradient, params.eta)
    ensure_finite_iterate(x_next, iteration, "x")
    next_point = evaluate_point(problem, x_next)

    u_next = np.maximum(0.0, state.u - params.tau * (state.lam + params.rho * (next_point.g + state.u)))

    gap = state.lam - state.mu
    coeff = delta / (float(gap @ gap) + 1.0)
    mu_next = state.mu + coeff * gap

    lam_raw = mu_next + params.rho * (next_point.g + u_next)
    lam_next = project_multiplier(lam_raw, params.lambda_cap)
    z_next = (lam_next - mu_next) / params.alpha

    # certificate from the unprojected multiplier
    nu = build_nu_ppala(state.lam, lam_raw, mu_next, state.u, u_next, params.tau, params.rho)
    next_state = IterateState(x=x_next, u=u_next, z=z_next, lam=lam_next, mu=mu_next, k=iteration)
    return StepOutcome(state=next_state, point=next_point, nu=nu, delta=delta, coeff=coeff)


def ppala_step(problem: ProblemSpec, state: IterateState, params: PpalaParams) -> IterateState:
    """Apply one PPALA step to ``state``.

    Raises:
        ConfigurationError: If the problem's constraints are non-smooth
        OracleFailure: If an oracle returns non-finite output
        DivergenceError: If an iterate becomes non-finite
    """
    _require_smooth(problem)
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        outcome = advance_ppala(problem, state, evaluate_point(problem, state.x), params)
    return outcome.state


def run_ppala(
    problem: ProblemSpec,
    params: PpalaParams,
    x0: Optional[np.ndarray] = None,
    trace_sink: Optional[TraceSink] = None,
    observer: Optional[StepObserver] = None,
    trace_every: int = 1,
) -> SolveResult:
    """Run PPALA from ``x0`` (domain center when omitted).

    Same contract as :func:`pplsolve.solvers.plada.run_plada`.

    Raises:
        ConfigurationError: If the problem's constraints are non-smooth
        DivergenceError: If an iterate becomes non-finite
    """
    _require_smooth(problem)
    start = problem.default_x0() if x0 is None else x0
    return run_loop(
        "ppala",
        problem,
        params,
        start,
        lambda prob, state, point: advance_ppala(prob, state, point, params),
        delta_schedule_ppala(0, params.p, params.q),
        trace_sink=trace_sink,
        observer=observer,
        trace_every=trace_every,
    )
