"""T-vs-4T rate report of an existing trace."""

from pathlib import Path
from typing import Optional

import click

from pplsolve.bench.outputs import read_trace
from pplsolve.commands.common import fail
from pplsolve.console import header, key_value_table, table, warning
from pplsolve.diagnostics.rates import random_iterate_report, rate_summary
from pplsolve.validation import PplSolveError


@click.command()
@click.option(
    "--trace",
    "trace_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="trace.csv written by solve",
)
@click.option("--horizon", type=click.IntRange(min=1), default=None, help="Horizon T (default: last iteration // 4)")
@click.option("--tol", type=click.FloatRange(min=0.0), default=1e-3, show_default=True, help="Random-iterate tolerance")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed of the random-iterate draws")
@click.pass_context
def rate(ctx: click.Context, trace_path: Path, horizon: Optional[int], tol: float, seed: int) -> None:
    """Compare running residual averages at T and 4T."""
    try:
        trace = read_trace(trace_path)
    except PplSolveError as e:
        fail(ctx, e)
    header(f"Rates: {trace_path}")

    report = rate_summary(trace, horizon)
    if report.insufficient:
        warning(f"Trace too short for T={report.T}: at least 4T iterations and 4 rows are needed")
    else:
        rows = [
            [name, r.average_t, r.average_4t, r.ratio if r.ratio is not None else "-", r.expected, r.status]
            for name, r in report.ratios.items()
        ]
        table(rows, headers=["Residual", f"avg@T={report.T}", "avg@4T", "Ratio", "Expected", "Status"])

    if trace:
        draws = random_iterate_report(trace, seed=seed, tol=tol)
        key_value_table(
            {
                "draws": draws.draws,
                "fraction within tol": draws.fraction_within_tol,
                "mean stationarity": draws.mean_stationarity,
                "mean feasibility": draws.mean_feasibility,
                "mean complementarity": draws.mean_complementarity,
            },
            title="Uniformly drawn iterates",
        )
