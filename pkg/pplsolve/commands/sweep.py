"""Alpha/beta robustness sweep."""

from pathlib import Path

import click

from pplsolve.bench.suite import robustness_sweep
from pplsolve.commands.common import fail, load_or_exit
from pplsolve.console import header, key_value_table, table
from pplsolve.validation import PplSolveError


@click.command()
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="Run config TOML",
)
@click.pass_context
def sweep(ctx: click.Context, config_path: Path) -> None:
    """Solve over alpha in {2, 5, 10, 20} (beta 0.1) and beta in {0.05, 0.1, 0.3, 0.5} (alpha 10)."""
    config = load_or_exit(ctx, config_path)
    try:
        report = robustness_sweep(config)
    except PplSolveError as e:
        fail(ctx, e)

    header(f"Sweep: {config.method} on {config.problem}")
    rows = [
        [run.alpha, run.beta, run.objective, run.feasibility, run.iterations, run.converged]
        for run in report.alpha_runs + report.beta_runs
    ]
    table(rows, headers=["alpha", "beta", "Objective", "Feasibility", "Iterations", "Converged"])
    key_value_table(
        {
            "objective spread over alpha": report.alpha_spread,
            "objective spread over beta": report.beta_spread,
            "max final feasibility": report.max_feasibility,
        }
    )
