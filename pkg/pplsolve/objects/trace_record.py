"""Per-iteration convergence trace rows."""

from typing import List

from pydantic import BaseModel, Field

# Column order of trace.csv
TRACE_COLUMNS: List[str] = [
    "iter",
    "elapsed_sec",
    "objective",
    "feasibility",
    "stationarity",
    "complementarity",
    "dual_gap",
    "lambda_norm",
    "mu_norm",
    "delta_k",
]


class TraceRecord(BaseModel):
    """One row of the convergence trace.

    Attributes:
        iter: Iteration index (0 for the initial point)
        elapsed_sec: Wall time since the solver started
        objective: f(x) + r(x)
        feasibility: ||max(0, g(x))||
        stationarity: Prox-gradient residual
        complementarity: sum_j |nu_j g_j(x)|
        dual_gap: ||lambda - mu||
        lambda_norm: ||lambda||
        mu_norm: ||mu||
        delta_k: Schedule value used by the step that produced this row
    """

    iter: int = Field(ge=0)
    elapsed_sec: float = Field(ge=0.0)
    objective: float
    feasibility: float = Field(ge=0.0)
    stationarity: float = Field(ge=0.0)
    complementarity: float = Field(ge=0.0)
    dual_gap: float = Field(ge=0.0)
    lambda_norm: float = Field(ge=0.0)
    mu_norm: float = Field(ge=0.0)
    delta_k: float

    def as_row(self) -> List[float]:
        return [getattr(self, column) for column in TRACE_COLUMNS]
