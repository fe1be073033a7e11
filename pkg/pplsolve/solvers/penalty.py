"""Quadratic-penalty baseline with a growing penalty weight.

Each round runs prox-gradient on f + (rho_t / 2) ||max(0, g)||^2 + r and then
multiplies rho_t by ``growth``. The multiplier estimate rho_t max(0, g(x)) serves
as certificate, so the baseline produces the same trace columns as the
primal-dual solvers.
"""

from typing import Dict, List, Optional

import numpy as np

from pplsolve.diagnostics.kkt import kkt_residuals
from pplsolve.logging_config import get_logger
from pplsolve.objects.constants import ConstantEstimates
from pplsolve.objects.iterate_state import IterateState
from pplsolve.objects.problem_spec import ProblemSpec, evaluate_point
from pplsolve.objects.solve_result import SolveResult, StopReason
from pplsolve.objects.solver_params import STEP_SAFETY, PenaltySchedule
from pplsolve.solvers.loop import TraceRecorder, TraceSink, ensure_finite_iterate, initialize_state, objective_value
from pplsolve.validation import ConfigurationError, DivergenceError

logger = get_logger(__name__)


def penalty_step_size(constants: ConstantEstimates, rho: float) -> float:
    """0.9 / (L_f + rho (M_g**2 + L_g B_g)), the inverse smoothness of the penalized objective."""
    denominator = constants.L_f + rho * (constants.M_g**2 + constants.L_g * constants.B_g)
    if denominator <= 0:
        raise ConfigurationError("constants are all zero; the penalty step size is undefined")
    return STEP_SAFETY / denominator


def quadratic_penalty_baseline(
    problem: ProblemSpec,
    schedule: PenaltySchedule,
    x0: Optional[np.ndarray] = None,
    trace_sink: Optional[TraceSink] = None,
    trace_every: int = 1,
) -> SolveResult:
    """Solve by an increasing sequence of quadratic penalties.

    Stops early once the epsilon-KKT tolerances hold. ``history`` records the
    feasibility and penalty weight at the end of every round.

    Raises:
        ConfigurationError: If the problem is non-smooth or has no constants
        DivergenceError: If an iterate becomes non-finite
    """
    if problem.smoothness != "smooth":
        raise ConfigurationError(f"the penalty baseline needs smooth constraints; {problem.name} is non-smooth")
    if problem.constants is None:
        raise ConfigurationError(f"{problem.name} has no constants; estimate them before running the baseline")

    state, point = initialize_state(problem, problem.default_x0() if x0 is None else x0)
    m = problem.num_constraints
    recorder = TraceRecorder(schedule.tol, trace_every, trace_sink)
    eta_ref = penalty_step_size(problem.constants, schedule.rho0)
    report = kkt_residuals(problem, state.x, np.zeros(m), eta_ref, point=point)
    recorder.observe(0, state.x, objective_value(problem, point), report, 0.0, 0.0, 0.0)

    history: Dict[str, List[float]] = {"round_feasibility": [], "round_penalty": []}
    stop_reason: StopReason = "budget"
    rho = schedule.rho0
    iteration = 0
    x = state.x
    nu = np.zeros(m)
    logger.info(f"penalty: starting on {problem.name} (rho0={schedule.rho0}, growth={schedule.growth})")

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for round_index in range(schedule.outer_rounds):
            eta = penalty_step_size(problem.constants, rho)
            for _ in range(schedule.inner_iters):
                iteration += 1
                violation = np.maximum(point.g, 0.0)
                gradient = point.grad + rho * (point.jac.T @ violation)
                x = problem.regularizer.prox(x - eta * gradient, eta)
                try:
                    ensure_finite_iterate(x, iteration, "x")
                except DivergenceError:
                    logger.error(f"penalty: diverged on {problem.name} at iteration {iteration}")
                    recorder.finish()
                    raise
                point = evaluate_point(problem, x)
                nu = rho * np.maximum(point.g, 0.0)
                report = kkt_residuals(problem, x, nu, eta, point=point)
                recorder.observe(
                    iteration, x, objective_value(problem, point), report, float(np.linalg.norm(nu)), 0.0, 0.0
                )
                if report.satisfies(schedule.tol):
                    stop_reason = "converged"
                    break

            history["round_feasibility"].append(report.feasibility)
            history["round_penalty"].append(rho)
            logger.debug(f"penalty: round {round_index + 1} rho={rho:.4g} feasibility={report.feasibility:.3e}")
            if stop_reason == "converged":
                break
            rho *= schedule.growth
    recorder.finish()

    final_state = IterateState(x=x, u=np.zeros(m), z=np.zeros(m), lam=nu, mu=np.zeros(m), k=iteration)
    logger.info(f"penalty: stopped on {problem.name} after {iteration} iterations ({stop_reason})")
    return SolveResult(
        method="penalty",
        state=final_state,
        report=report,
        converged=report.satisfies(schedule.tol),
        stop_reason=stop_reason,
        iterations=iteration,
        wall_time_sec=recorder.elapsed(),
        best_index=recorder.best_index,
        best_x=recorder.best_x if recorder.best_x is not None else x,
        trace=recorder.records,
        history=history,
    )
