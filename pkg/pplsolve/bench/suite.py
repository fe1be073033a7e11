"""Configuration-driven runs: one config, several configs in parallel, and the alpha/beta sweep."""

import os
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel

from pplsolve.bench.outputs import write_outputs
from pplsolve.diagnostics.kkt import constraint_violation_stats
from pplsolve.diagnostics.rates import random_iterate_report, rate_summary
from pplsolve.logging_config import get_logger
from pplsolve.objects.problem_spec import ProblemSpec, evaluate_point
from pplsolve.objects.run_config import RunConfig
from pplsolve.objects.run_summary import RunSummary
from pplsolve.objects.solve_result import SolveResult
from pplsolve.objects.solver_params import (
    PenaltySchedule,
    PladaParams,
    PpalaParams,
    derive_plada_params,
    derive_ppala_params,
)
from pplsolve.objects.trace_record import TraceRecord
from pplsolve.problems.registry import build_problem
from pplsolve.solvers.loop import StepObserver, TraceSink, initial_point, objective_value
from pplsolve.solvers.penalty import quadratic_penalty_baseline
from pplsolve.solvers.plada import run_plada
from pplsolve.solvers.ppala import run_ppala
from pplsolve.validation import ConfigurationError, DivergenceError, PplSolveError

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_DIVERGED = 2

THREADS_ENV = "PPL_SOLVE_THREADS"

SWEEP_ALPHAS = (2.0, 5.0, 10.0, 20.0)
SWEEP_BETAS = (0.05, 0.1, 0.3, 0.5)
SWEEP_FIXED_ALPHA = 10.0
SWEEP_FIXED_BETA = 0.1


def solver_params(config: RunConfig, problem: ProblemSpec) -> Union[PladaParams, PpalaParams, PenaltySchedule]:
    """Parameters of the configured method, derived from the problem constants."""
    bounded = problem.regularizer.is_bounded
    if config.method == "plada":
        return derive_plada_params(
            config.alpha, config.effective_beta, problem.constants, config.solver_overrides(), bounded
        )
    if config.method == "ppala":
        return derive_ppala_params(
            config.alpha, config.effective_beta, problem.constants, config.solver_overrides(), bounded
        )
    return PenaltySchedule(
        rho0=config.rho0,
        growth=config.growth,
        inner_iters=config.inner_iters,
        outer_rounds=config.outer_rounds,
        tol=config.tolerances(),
    )


def solve_config(
    config: RunConfig,
    problem: Optional[ProblemSpec] = None,
    trace_sink: Optional[TraceSink] = None,
    observer: Optional[StepObserver] = None,
) -> SolveResult:
    """Build the problem (unless given) and run the configured method once.

    Raises:
        PplSolveError: On construction, configuration or divergence failures
    """
    problem = build_problem(config) if problem is None else problem
    params = solver_params(config, problem)
    x0 = initial_point(problem, config.init, config.seed)
    if isinstance(params, PladaParams):
        return run_plada(problem, params, x0, trace_sink, observer, config.trace_every)
    if isinstance(params, PpalaParams):
        return run_ppala(problem, params, x0, trace_sink, observer, config.trace_every)
    return quadratic_penalty_baseline(problem, params, x0, trace_sink, config.trace_every)


def summarize(config: RunConfig, problem: ProblemSpec, result: SolveResult) -> RunSummary:
    """Summary of a finished run, including rate and random-iterate reports."""
    point = evaluate_point(problem, result.x)
    report = result.report
    random_iterate = random_iterate_report(result.trace, config.seed, config.tolerances()) if result.trace else None
    return RunSummary(
        config=config.model_dump(mode="json"),
        problem=problem.name,
        method=result.method,
        converged=result.converged,
        stop_reason=result.stop_reason,
        iterations=result.iterations,
        wall_time_sec=result.wall_time_sec,
        objective=objective_value(problem, point),
        stationarity=report.stationarity,
        feasibility=report.feasibility,
        complementarity=report.complementarity,
        dual_gap=report.dual_gap,
        violation=constraint_violation_stats(problem, result.x),
        best_index=result.best_index,
        x=result.x.tolist(),
        nu=report.nu.tolist(),
        rate_summary=rate_summary(result.trace),
        random_iterate=random_iterate,
        history=result.history,
    )


def run_suite(config: RunConfig) -> int:
    """Run one config and write trace.csv and summary.json into its output_dir.

    Returns:
        0 on a completed run (converged or budget exhausted), 2 when the solver
        diverged (the summary records the failure iteration), 1 when the problem
        or data could not be built (nothing is written)
    """
    try:
        problem = build_problem(config)
    except PplSolveError as e:
        logger.error(f"{config.problem}: cannot build problem: {e}")
        return EXIT_FAILED

    trace: List[TraceRecord] = []
    start = time.perf_counter()
    try:
        result = solve_config(config, problem, trace_sink=trace.append)
    except DivergenceError as e:
        summary = RunSummary(
            config=config.model_dump(mode="json"),
            problem=problem.name,
            method=config.method,
            converged=False,
            stop_reason="diverged",
            iterations=max(e.iteration - 1, 0),
            wall_time_sec=time.perf_counter() - start,
            failure_iteration=e.iteration,
            error=str(e),
        )
        write_outputs(trace, summary, config.output_dir)
        return EXIT_DIVERGED
    except PplSolveError as e:
        logger.error(f"{problem.name}/{config.method}: {e}")
        return EXIT_FAILED

    write_outputs(result.trace, summarize(config, problem, result), config.output_dir)
    return EXIT_OK


def worker_count(runs: int) -> int:
    """Workers for ``runs`` independent runs, capped by PPL_SOLVE_THREADS."""
    limit = os.cpu_count() or 1
    value = os.environ.get(THREADS_ENV)
    if value:
        try:
            limit = int(value)
        except ValueError:
            raise ConfigurationError(f"{THREADS_ENV} must be an integer, got {value!r}")
        if limit < 1:
            raise ConfigurationError(f"{THREADS_ENV} must be >= 1, got {limit}")
    return max(1, min(runs, limit))


def run_many(configs: Sequence[RunConfig]) -> List[int]:
    """Run independent configs in a thread pool, one worker per run.

    Returns:
        Exit status per config, in input order

    Raises:
        ConfigurationError: If two configs share an output directory
    """
    directories = [c.output_dir.resolve() for c in configs]
    if len(set(directories)) != len(directories):
        raise ConfigurationError("every run in a suite needs its own output_dir")
    if not configs:
        return []
    workers = worker_count(len(configs))
    logger.debug(f"running {len(configs)} configs on {workers} workers")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_suite, configs))


class SweepRun(BaseModel):
    """Final state of one sweep run."""

    alpha: float
    beta: float
    feasibility: float
    objective: float
    converged: bool
    iterations: int


class SweepReport(BaseModel):
    """Alpha sweep at fixed beta and beta sweep at fixed alpha.

    Attributes:
        alpha_runs: Runs over the alpha grid
        beta_runs: Runs over the beta grid
        alpha_spread: (max - min) / |mean| of the final objectives over alpha_runs
        beta_spread: Same over beta_runs
        max_feasibility: Largest final feasibility over all runs
    """

    alpha_runs: List[SweepRun]
    beta_runs: List[SweepRun]
    alpha_spread: float
    beta_spread: float
    max_feasibility: float


def relative_spread(values: Sequence[float]) -> float:
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        return 0.0
    scale = abs(float(arr.mean()))
    width = float(arr.max() - arr.min())
    return width / scale if scale > 0 else width


def _sweep_run(config: RunConfig, problem: ProblemSpec) -> SweepRun:
    result = solve_config(config, problem)
    objective = objective_value(problem, evaluate_point(problem, result.x))
    return SweepRun(
        alpha=config.alpha,
        beta=config.effective_beta,
        feasibility=result.report.feasibility,
        objective=objective,
        converged=result.converged,
        iterations=result.iterations,
    )


def robustness_sweep(
    config: RunConfig,
    alphas: Sequence[float] = SWEEP_ALPHAS,
    betas: Sequence[float] = SWEEP_BETAS,
    fixed_alpha: float = SWEEP_FIXED_ALPHA,
    fixed_beta: float = SWEEP_FIXED_BETA,
) -> SweepReport:
    """Solve the configured problem over an alpha grid and a beta grid.

    The problem is built once and shared read-only by all runs.

    Raises:
        ConfigurationError: If the method is the penalty baseline
        ParameterError: If a grid value is out of range
    """
    if config.method == "penalty":
        raise ConfigurationError("the sweep varies alpha and beta; it needs method plada or ppala")
    problem = build_problem(config)
    alpha_configs = [config.model_copy(update={"alpha": a, "beta": fixed_beta}) for a in alphas]
    beta_configs = [config.model_copy(update={"alpha": fixed_alpha, "beta": b}) for b in betas]
    grid = alpha_configs + beta_configs

    workers = worker_count(len(grid))
    logger.info(f"sweep on {problem.name}: {len(alphas)} alphas, {len(betas)} betas, {workers} workers")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        runs = list(pool.map(lambda c: _sweep_run(c, problem), grid))

    alpha_runs = runs[: len(alpha_configs)]
    beta_runs = runs[len(alpha_configs) :]
    return SweepReport(
        alpha_runs=alpha_runs,
        beta_runs=beta_runs,
        alpha_spread=relative_spread([r.objective for r in alpha_runs]),
        beta_spread=relative_spread([r.objective for r in beta_runs]),
        max_feasibility=max((r.feasibility for r in runs), default=0.0),
    )
