"""Empirical rate reports computed from convergence traces.

The ergodic guarantees bound running averages of the squared stationarity and
squared feasibility residuals by O(1/T) and the running average of the
complementarity residual by O(1/sqrt(T)). Comparing the averages at T and 4T
should therefore give ratios near 1/4 and 1/2 respectively.
"""

from typing import Dict, List, Literal, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel

from pplsolve.objects.kkt_report import KktTolerances
from pplsolve.objects.trace_record import TraceRecord

RatioStatus = Literal["ok", "converged", "insufficient"]

# Expected T-vs-4T ratios without log factors
EXPECTED_RATIOS: Dict[str, float] = {"stationarity": 0.25, "feasibility": 0.25, "complementarity": 0.5}

RANDOM_ITERATE_DRAWS = 100

# Averages at or below this (squared for the squared series) count as converged
RATE_FLOOR = 1e-12


class RateRatio(BaseModel):
    """Running averages at T and 4T for one residual.

    Attributes:
        average_t: Average over iterations 1..T
        average_4t: Average over iterations 1..4T
        ratio: average_4t / average_t (None for the 0/0 and insufficient cases)
        expected: Ratio the theory predicts without log factors
        status: "ok", "converged" (both averages at the noise floor) or "insufficient"
    """

    average_t: float
    average_4t: float
    ratio: Optional[float]
    expected: float
    status: RatioStatus


class RateReport(BaseModel):
    """T-vs-4T comparison of the three residual running averages."""

    T: int
    insufficient: bool
    ratios: Dict[str, RateRatio]


def _insufficient(T: int) -> RateReport:
    ratios = {
        name: RateRatio(average_t=0.0, average_4t=0.0, ratio=None, expected=expected, status="insufficient")
        for name, expected in EXPECTED_RATIOS.items()
    }
    return RateReport(T=T, insufficient=True, ratios=ratios)


def rate_summary(trace: Sequence[TraceRecord], T: Optional[int] = None) -> RateReport:
    """Compare running averages of the residuals at T and 4T.

    Averages run over the rows with 1 <= iter <= T and 1 <= iter <= 4T; the
    squared residual is used for stationarity and feasibility, the plain one for
    complementarity.

    Args:
        trace: Trace rows in increasing iteration order
        T: First checkpoint (default: last iteration // 4)

    Averages at or below RATE_FLOOR (its square for the squared series) are
    roundoff once the iterates have settled and are reported as converged.

    Returns:
        RateReport; marked insufficient when the trace has fewer than 4 rows or
        does not reach iteration 4T
    """
    if len(trace) < 4:
        return _insufficient(T or 0)
    iters = np.array([row.iter for row in trace], dtype=np.int64)
    last = int(iters[-1])
    if T is None:
        T = last // 4
    if T < 1 or last < 4 * T:
        return _insufficient(T)

    series = {
        "stationarity": np.array([row.stationarity for row in trace]) ** 2,
        "feasibility": np.array([row.feasibility for row in trace]) ** 2,
        "complementarity": np.array([row.complementarity for row in trace]),
    }
    first_window = (iters >= 1) & (iters <= T)
    second_window = (iters >= 1) & (iters <= 4 * T)

    floors = {"stationarity": RATE_FLOOR**2, "feasibility": RATE_FLOOR**2, "complementarity": RATE_FLOOR}
    ratios = {}
    for name, values in series.items():
        average_t = float(values[first_window].mean())
        average_4t = float(values[second_window].mean())
        if average_t <= floors[name] and average_4t <= floors[name]:
            ratio, status = None, "converged"
        elif average_t == 0.0:
            ratio, status = float("inf"), "ok"
        else:
            ratio, status = average_4t / average_t, "ok"
        ratios[name] = RateRatio(
            average_t=average_t,
            average_4t=average_4t,
            ratio=ratio,
            expected=EXPECTED_RATIOS[name],
            status=status,
        )
    return RateReport(T=T, insufficient=False, ratios=ratios)


class RandomIterateReport(BaseModel):
    """Epsilon-KKT statistics of uniformly drawn trace rows.

    Attributes:
        draws: Number of drawn rows
        fraction_within_tol: Share of drawn rows meeting all three tolerances
        mean_stationarity: Mean stationarity over the drawn rows
        mean_feasibility: Mean feasibility over the drawn rows
        mean_complementarity: Mean complementarity over the drawn rows
        drawn_iters: Iteration indices of the drawn rows
    """

    draws: int
    fraction_within_tol: float
    mean_stationarity: float
    mean_feasibility: float
    mean_complementarity: float
    drawn_iters: List[int]


def random_iterate_report(
    trace: Sequence[TraceRecord],
    seed: int = 0,
    tol: Union[float, KktTolerances] = 1e-3,
    draws: int = RANDOM_ITERATE_DRAWS,
) -> RandomIterateReport:
    """Draw ``draws`` rows uniformly (with replacement) and report how many are epsilon-KKT.

    A tolerance of 0 only accepts rows whose residuals are exactly zero.

    Raises:
        ValueError: If the trace is empty
    """
    if len(trace) == 0:
        raise ValueError("random_iterate_report needs a non-empty trace")
    if isinstance(tol, KktTolerances):
        eps = (tol.eps_stationarity, tol.eps_feasibility, tol.eps_complementarity)
    else:
        eps = (float(tol), float(tol), float(tol))

    rng = np.random.default_rng(seed)
    indices = rng.integers(0, len(trace), size=draws)
    rows = [trace[int(i)] for i in indices]
    within = [
        row.stationarity <= eps[0] and row.feasibility <= eps[1] and row.complementarity <= eps[2] for row in rows
    ]
    return RandomIterateReport(
        draws=draws,
        fraction_within_tol=float(np.mean(within)),
        mean_stationarity=float(np.mean([row.stationarity for row in rows])),
        mean_feasibility=float(np.mean([row.feasibility for row in rows])),
        mean_complementarity=float(np.mean([row.complementarity for row in rows])),
        drawn_iters=[row.iter for row in rows],
    )
