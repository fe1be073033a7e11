"""Iteration driver shared by the primal-dual solvers.

A solver contributes an ``advance`` function that maps (state, oracle evaluation at
state.x) to a :class:`StepOutcome`. The driver owns initialization, the trace,
early stopping on the epsilon-KKT tolerances, divergence detection and the
best-iterate bookkeeping. Oracle values at x_{k+1} are evaluated once per step and
reused for the residuals and the next step.
"""

import logging
import time
from typing import Callable, List, Literal, NamedTuple, Optional, Tuple

import numpy as np

from pplsolve.diagnostics.kkt import kkt_residuals
from pplsolve.logging_config import get_logger
from pplsolve.objects.iterate_state import IterateState
from pplsolve.objects.kkt_report import KktReport, KktTolerances
from pplsolve.objects.problem_spec import OracleEval, ProblemSpec, evaluate_point
from pplsolve.objects.solve_result import SolveResult, StopReason
from pplsolve.objects.solver_params import SolverParams
from pplsolve.objects.trace_record import TraceRecord
from pplsolve.validation import DivergenceError, DomainError, validate_vector

logger = get_logger(__name__)


class StepOutcome(NamedTuple):
    """Result of one solver step.

    Attributes:
        state: Iterate after the step
        point: Oracle evaluation at state.x
        nu: Certificate multiplier built from the slack update
        delta: Schedule value delta_k used by the step
        coeff: Effective mu-step coefficient
    """

    state: IterateState
    point: OracleEval
    nu: np.ndarray
    delta: float
    coeff: float


AdvanceFn = Callable[[ProblemSpec, IterateState, OracleEval], StepOutcome]
TraceSink = Callable[[TraceRecord], None]
StepObserver = Callable[[IterateState, StepOutcome], None]


def ensure_finite_iterate(values: np.ndarray, iteration: int, name: str) -> None:
    """Raise DivergenceError when an iterate component holds NaN or inf."""
    if not np.all(np.isfinite(values)):
        raise DivergenceError(f"{name} became non-finite at iteration {iteration}", iteration)


def project_multiplier(lam: np.ndarray, cap: Optional[float]) -> np.ndarray:
    """Project lambda onto the Euclidean ball of radius ``cap`` (no-op when None)."""
    if cap is None:
        return lam
    norm = float(np.linalg.norm(lam))
    if norm <= cap:
        return lam
    return lam * (cap / norm) if norm > 0 else lam


def initial_point(
    problem: ProblemSpec, init: Literal["default", "center", "random"] = "default", seed: int = 0
) -> np.ndarray:
    """Starting point: the problem's declared start, the domain center, or a seeded uniform draw from the box."""
    if init == "random":
        rng = np.random.default_rng(seed)
        return problem.regularizer.sample(rng, 1)[0]
    if init == "center":
        return problem.regularizer.center(problem.dimension)
    return problem.default_x0()


def initialize_state(problem: ProblemSpec, x0: np.ndarray) -> Tuple[IterateState, OracleEval]:
    """lambda = mu = z = 0 and u = max(0, -g(x0)).

    Raises:
        DomainError: If x0 lies outside the regularizer domain
    """
    x0 = validate_vector(x0, problem.dimension, "x0")
    if not problem.regularizer.contains(x0):
        raise DomainError(f"x0 lies outside the domain of {problem.name}")
    point = evaluate_point(problem, np.array(x0, copy=True))
    m = problem.num_constraints
    state = IterateState(
        x=point.x,
        u=np.maximum(0.0, -point.g),
        z=np.zeros(m),
        lam=np.zeros(m),
        mu=np.zeros(m),
        k=0,
    )
    return state, point


def objective_value(problem: ProblemSpec, point: OracleEval) -> float:
    return point.f + problem.regularizer.value(point.x)


class TraceRecorder:
    """Collects trace rows with a stride and tracks the best iterate.

    Every ``trace_every``-th iteration is emitted; :meth:`finish` emits the last
    observed iteration if the stride skipped it.
    """

    def __init__(self, tol: KktTolerances, trace_every: int = 1, sink: Optional[TraceSink] = None) -> None:
        if trace_every < 1:
            raise ValueError(f"trace_every must be >= 1, got {trace_every}")
        self.tol = tol
        self.trace_every = trace_every
        self.sink = sink
        self.records: List[TraceRecord] = []
        self.best_index = 0
        self.best_x: Optional[np.ndarray] = None
        self._best_score = float("inf")
        self._start = time.perf_counter()
        self._pending: Optional[TraceRecord] = None
        self._debug = logger.isEnabledFor(logging.DEBUG)

    def elapsed(self) -> float:
        return time.perf_counter() - self._start

    def observe(
        self,
        iteration: int,
        x: np.ndarray,
        objective: float,
        report: KktReport,
        lambda_norm: float,
        mu_norm: float,
        delta: float,
    ) -> None:
        score = report.worst_ratio(self.tol)
        if score < self._best_score:
            self._best_score = score
            self.best_index = iteration
            self.best_x = np.array(x, copy=True)

        record = TraceRecord(
            iter=iteration,
            elapsed_sec=self.elapsed(),
            objective=objective,
            feasibility=report.feasibility,
            stationarity=report.stationarity,
            complementarity=report.complementarity,
            dual_gap=report.dual_gap,
            lambda_norm=lambda_norm,
            mu_norm=mu_norm,
            delta_k=delta,
        )
        if iteration % self.trace_every == 0:
            self._emit(record)
            self._pending = None
        else:
            self._pending = record

    def finish(self) -> None:
        if self._pending is not None:
            self._emit(self._pending)
            self._pending = None

    def _emit(self, record: TraceRecord) -> None:
        self.records.append(record)
        if self.sink is not None:
            self.sink(record)
        if self._debug:
            logger.debug(
                f"iter={record.iter} obj={record.objective:.6g} feas={record.feasibility:.3e} "
                f"stat={record.stationarity:.3e} comp={record.complementarity:.3e} gap={record.dual_gap:.3e}"
            )


def run_loop(
    method: str,
    problem: ProblemSpec,
    params: SolverParams,
    x0: np.ndarray,
    advance: AdvanceFn,
    first_delta: float,
    trace_sink: Optional[TraceSink] = None,
    observer: Optional[StepObserver] = None,
    trace_every: int = 1,
) -> SolveResult:
    """Run ``advance`` up to ``params.max_iters`` times.

    Stops early once the residuals of x_{k+1} against the step's certificate satisfy
    ``params.tol``, unless ``params.early_stop`` is off. The initial row uses
    nu = 0 and records ``first_delta``.

    Raises:
        DivergenceError: If an iterate becomes non-finite
    """
    state, point = initialize_state(problem, x0)
    recorder = TraceRecorder(params.tol, trace_every, trace_sink)
    report = kkt_residuals(problem, state.x, np.zeros(problem.num_constraints), params.eta, point=point)
    recorder.observe(0, state.x, objective_value(problem, point), report, 0.0, 0.0, first_delta)

    logger.info(
        f"{method}: starting on {problem.name} (n={problem.dimension}, m={problem.num_constraints}, "
        f"K={params.max_iters})"
    )
    stop_reason: StopReason = "budget"
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for k in range(params.max_iters):
            try:
                outcome = advance(problem, state, point)
                if not outcome.state.is_finite():
                    raise DivergenceError(f"iterate became non-finite at iteration {k + 1}", k + 1)
            except DivergenceError as e:
                logger.error(f"{method}: diverged on {problem.name} at iteration {e.iteration}")
                recorder.finish()
                raise
            if observer is not None:
                observer(state, outcome)

            state, point = outcome.state, outcome.point
            report = kkt_residuals(problem, state.x, outcome.nu, params.eta, dual_gap=state.dual_gap, point=point)
            recorder.observe(
                state.k,
                state.x,
                objective_value(problem, point),
                report,
                float(np.linalg.norm(state.lam)),
                float(np.linalg.norm(state.mu)),
                outcome.delta,
            )
            if params.early_stop and report.satisfies(params.tol):
                stop_reason = "converged"
                break
    recorder.finish()

    converged = report.satisfies(params.tol)
    logger.info(
        f"{method}: stopped on {problem.name} after {state.k} iterations ({stop_reason}); "
        f"stat={report.stationarity:.3e} feas={report.feasibility:.3e} comp={report.complementarity:.3e}"
    )
    return SolveResult(
        method=method,
        state=state,
        report=report,
        converged=converged,
        stop_reason=stop_reason,
        iterations=state.k,
        wall_time_sec=recorder.elapsed(),
        best_index=recorder.best_index,
        best_x=recorder.best_x if recorder.best_x is not None else state.x,
        trace=recorder.records,
    )
