"""summary.json model written after every run."""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel

from pplsolve.diagnostics.kkt import ViolationStats
from pplsolve.diagnostics.rates import RandomIterateReport, RateReport
from pplsolve.objects.solve_result import StopReason


class RunSummary(BaseModel):
    """Outcome of one configured run.

    Attributes:
        config: Echo of the run config (JSON-compatible)
        problem: Problem name
        method: Solver name
        converged: Whether the final report satisfies all tolerances
        stop_reason: "converged", "budget" or "diverged"
        iterations: Completed iterations
        wall_time_sec: Solver wall time
        objective: f(x) + r(x) at the final iterate
        stationarity, feasibility, complementarity, dual_gap: Final residuals
        violation: Mean and max constraint violation at the final iterate
        best_index: Iteration with the smallest tolerance-scaled residuals
        x: Final primal point
        nu: Final certificate multiplier
        rate_summary: T-vs-4T ratios of the trace (None when the trace is too short)
        random_iterate: Uniform-iterate epsilon-KKT statistics
        history: Per-round series of the penalty baseline
        failure_iteration: Iteration at which the run diverged
        error: Failure message for diverged runs
    """

    config: Dict[str, Any]
    problem: str
    method: str
    converged: bool
    stop_reason: StopReason
    iterations: int
    wall_time_sec: float
    objective: Optional[float] = None
    stationarity: Optional[float] = None
    feasibility: Optional[float] = None
    complementarity: Optional[float] = None
    dual_gap: Optional[float] = None
    violation: Optional[ViolationStats] = None
    best_index: Optional[int] = None
    x: List[float] = []
    nu: List[float] = []
    rate_summary: Optional[RateReport] = None
    random_iterate: Optional[RandomIterateReport] = None
    history: Dict[str, List[float]] = {}
    failure_iteration: Optional[int] = None
    error: Optional[str] = None
