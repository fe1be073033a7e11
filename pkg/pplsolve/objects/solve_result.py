"""Outcome of one solver run."""

from typing import Dict, List, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from pplsolve.objects.iterate_state import IterateState
from pplsolve.objects.kkt_report import KktReport
from pplsolve.objects.trace_record import TraceRecord

StopReason = Literal["converged", "budget", "diverged"]


class SolveResult(BaseModel):
    """Final state, certificate and trace of a solver run.

    Attributes:
        method: Solver that produced the run ("plada", "ppala" or "penalty")
        state: Last iterate
        report: KKT residuals of the last iterate
        converged: Whether the last report satisfies all tolerances
        stop_reason: "converged", "budget" or "diverged"
        iterations: Number of completed iterations
        wall_time_sec: Wall time of the run
        best_index: Iteration whose residuals were smallest relative to the tolerances
        best_x: Primal point of that iteration
        trace: Emitted trace rows
        history: Extra per-round series (penalty baseline)
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    method: str
    state: IterateState
    report: KktReport
    converged: bool
    stop_reason: StopReason
    iterations: int = Field(ge=0)
    wall_time_sec: float = Field(ge=0.0)
    best_index: int = Field(ge=0)
    best_x: np.ndarray
    trace: List[TraceRecord] = []
    history: Dict[str, List[float]] = {}

    @property
    def x(self) -> np.ndarray:
        return self.state.x

    @property
    def nu(self) -> np.ndarray:
        return self.report.nu
