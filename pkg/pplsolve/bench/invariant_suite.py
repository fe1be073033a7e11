"""Run a solver while checking every step against the convergence relations.

The observer attached to the solver loop applies, per step:

- the four iterate relations (mu step, coefficient, mu contraction, lambda step)
- the approximate-decrease inequality of the (augmented) Lagrangian
- non-negativity of the raw certificate and its vanishing on unclipped slack steps
- u >= 0
- the two closure identities restored by the step

Relations and descent assume the closure identity at the previous iterate. The
zero initialization only satisfies it when x0 is feasible, so an infeasible
start skips the first step and every later step is checked. After the run the
Lagrangian values are checked for shrinking ranges over windows of 1000 steps
past step 10000.
"""

from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from pplsolve.diagnostics.kkt import NU_NEGATIVE_TOL, closure_residuals
from pplsolve.diagnostics.step_checks import (
    Mode,
    check_descent,
    check_iterate_relations,
    lagrangian_value,
    lagrangian_window_trend,
    window_ranges,
)
from pplsolve.logging_config import get_logger
from pplsolve.objects.iterate_state import IterateState
from pplsolve.objects.problem_spec import ProblemSpec
from pplsolve.objects.solve_result import SolveResult
from pplsolve.objects.solver_params import PladaParams, PpalaParams, SolverParams
from pplsolve.solvers.loop import StepOutcome
from pplsolve.solvers.plada import run_plada
from pplsolve.solvers.ppala import run_ppala
from pplsolve.validation import ConfigurationError

logger = get_logger(__name__)

CLOSURE_TOL = 1e-10

WINDOW = 1000
WINDOW_START = 10000
WINDOW_FACTOR = 2.0


class InvariantReport(BaseModel):
    """Pass counts of the per-step checks of one run.

    Attributes:
        problem: Problem name
        method: "plada" or "ppala"
        steps: Completed steps
        relation_steps: Steps on which the relations were evaluated
        relation_failures: Relation name -> number of failing steps
        descent_steps: Steps on which the descent inequality was evaluated
        descent_failures: Failing descent steps
        descent_enforced: Whether descent failures fail the suite
        min_descent_slack: Smallest slack of the descent inequality
        nu_min: Smallest raw certificate coordinate seen
        nu_negative: Coordinates below -1e-10
        interior_nu_max: Largest |nu_j| on unclipped slack coordinates
        u_negative: Steps producing a negative slack coordinate
        max_lambda_closure: Largest ||lam - mu - rho (g + u)||
        max_z_closure: Largest ||z - (lam - mu) / alpha||
        window_ranges: max - min of the Lagrangian per window past step 10000
        window_trend: Whether each window range is at most twice the previous
            one (None when the run has fewer than two full windows)
    """

    problem: str
    method: str
    steps: int = 0
    relation_steps: int = 0
    relation_failures: Dict[str, int] = {}
    descent_steps: int = 0
    descent_failures: int = 0
    descent_enforced: bool = True
    min_descent_slack: float = float("inf")
    nu_min: float = 0.0
    nu_negative: int = 0
    interior_nu_max: float = 0.0
    u_negative: int = 0
    max_lambda_closure: float = 0.0
    max_z_closure: float = 0.0
    window_ranges: List[float] = []
    window_trend: Optional[bool] = None

    @property
    def relations_passed(self) -> bool:
        return all(count == 0 for count in self.relation_failures.values())

    @property
    def passed(self) -> bool:
        return (
            self.relations_passed
            and (self.descent_failures == 0 or not self.descent_enforced)
            and self.nu_negative == 0
            and self.interior_nu_max <= NU_NEGATIVE_TOL
            and self.u_negative == 0
            and self.max_lambda_closure <= CLOSURE_TOL
            and self.max_z_closure <= CLOSURE_TOL
            and self.window_trend is not False
        )


def raw_certificate(prev: IterateState, outcome: StepOutcome, params: SolverParams, mode: Mode) -> np.ndarray:
    """The certificate before clipping, rebuilt from the two iterates."""
    nxt = outcome.state
    if mode == "plada":
        return prev.lam + (nxt.u - prev.u) / params.tau
    return prev.lam + nxt.lam - nxt.mu + (1.0 / params.tau - params.rho) * (nxt.u - prev.u)


class InvariantObserver:
    """Step observer accumulating an :class:`InvariantReport`."""

    def __init__(self, problem: ProblemSpec, params: SolverParams, mode: Mode, enforce_descent: bool) -> None:
        if problem.constants is None:
            raise ConfigurationError(f"{problem.name} has no constants; the relations cannot be checked")
        self.problem = problem
        self.params = params
        self.mode = mode
        self.constants = problem.constants
        self.report = InvariantReport(problem=problem.name, method=mode, descent_enforced=enforce_descent)
        self.lagrangian_values: List[float] = []
        self._last_value: Optional[Tuple[int, float]] = None
        self._failures: Dict[str, int] = {}

    def _relations_apply(self, prev: IterateState) -> bool:
        if prev.k >= 1:
            return True
        lambda_closure, _ = closure_residuals(self.problem, prev, self.params)
        return lambda_closure <= CLOSURE_TOL

    def __call__(self, prev: IterateState, outcome: StepOutcome) -> None:
        report = self.report
        nxt = outcome.state
        report.steps += 1
        L_next = lagrangian_value(self.problem, nxt, self.params, self.mode)
        self.lagrangian_values.append(L_next)

        if self._relations_apply(prev):
            relations = check_iterate_relations(prev, nxt, self.params, self.constants, outcome.delta, self.mode)
            report.relation_steps += 1
            for name in relations.checks:
                self._failures.setdefault(name, 0)
            for name in relations.failed():
                self._failures[name] += 1
                logger.debug(f"step {nxt.k}: relation {name} failed ({relations.checks[name]})")

            if self._last_value is not None and self._last_value[0] == prev.k:
                L_prev = self._last_value[1]
            else:
                L_prev = lagrangian_value(self.problem, prev, self.params, self.mode)
            descent = check_descent(
                L_prev,
                L_next,
                float(np.linalg.norm(nxt.x - prev.x)),
                float(np.linalg.norm(nxt.u - prev.u)),
                self.constants,
                self.params,
                outcome.delta,
                self.mode,
            )
            report.descent_steps += 1
            report.min_descent_slack = min(report.min_descent_slack, descent.slack)
            if not descent.passed:
                report.descent_failures += 1
                logger.debug(f"step {nxt.k}: descent slack {descent.slack:.3e}")

        nu = raw_certificate(prev, outcome, self.params, self.mode)
        if nu.size:
            report.nu_min = min(report.nu_min, float(nu.min()))
            report.nu_negative += int(np.sum(nu < -NU_NEGATIVE_TOL))
            interior = nxt.u > 0.0
            if np.any(interior):
                report.interior_nu_max = max(report.interior_nu_max, float(np.abs(nu[interior]).max()))
        if np.any(nxt.u < 0.0):
            report.u_negative += 1

        self._last_value = (nxt.k, L_next)
        lambda_closure, z_closure = closure_residuals(self.problem, nxt, self.params)
        report.max_lambda_closure = max(report.max_lambda_closure, lambda_closure)
        report.max_z_closure = max(report.max_z_closure, z_closure)

    def finish(self) -> InvariantReport:
        report = self.report
        report.relation_failures = dict(self._failures)
        report.window_ranges = window_ranges(self.lagrangian_values, WINDOW, WINDOW_START)
        if len(report.window_ranges) >= 2:
            report.window_trend = lagrangian_window_trend(
                self.lagrangian_values, WINDOW, WINDOW_START, WINDOW_FACTOR
            )
        return report


def run_invariant_suite(
    problem: ProblemSpec,
    method: Mode,
    params: SolverParams,
    x0: Optional[np.ndarray] = None,
    enforce_descent: Optional[bool] = None,
) -> Tuple[InvariantReport, SolveResult]:
    """Run ``method`` on ``problem`` with every step checked.

    Descent is enforced for PPALA and for PLADA in exact-subproblem mode; for
    linearized PLADA it is reported only.

    Raises:
        ConfigurationError: If the problem has no constants, a multiplier cap is
            set (it breaks the closure identity), or the method is unknown
        DivergenceError: If an iterate becomes non-finite
    """
    if params.lambda_cap is not None:
        raise ConfigurationError("the invariant suite needs lambda_cap unset")
    if enforce_descent is None:
        enforce_descent = method == "ppala" or getattr(params, "x_update_mode", "") == "exact-subproblem"
    observer = InvariantObserver(problem, params, method, enforce_descent)

    if method == "plada" and isinstance(params, PladaParams):
        result = run_plada(problem, params, x0=x0, observer=observer)
    elif method == "ppala" and isinstance(params, PpalaParams):
        result = run_ppala(problem, params, x0=x0, observer=observer)
    else:
        raise ConfigurationError(f"no invariant suite for method {method!r} with {type(params).__name__}")

    report = observer.finish()
    logger.info(
        f"invariants on {problem.name}/{method}: {report.steps} steps, relations "
        f"{'passed' if report.relations_passed else 'FAILED'}, descent failures {report.descent_failures}, "
        f"min nu {report.nu_min:.3e}, window trend {report.window_trend}"
    )
    return report, result
