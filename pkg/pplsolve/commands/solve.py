"""Run one configured solve and write its outputs."""

from pathlib import Path
from typing import Optional

import click

from pplsolve.bench.outputs import SUMMARY_FILE
from pplsolve.bench.suite import EXIT_DIVERGED, EXIT_OK, run_suite
from pplsolve.commands.common import fail, load_or_exit
from pplsolve.console import error, header, key_value_table, residual_table, status, success, warning
from pplsolve.objects.run_summary import RunSummary
from pplsolve.validation import PplSolveError


@click.command()
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="Run config TOML",
)
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), default=None, help="Output directory")
@click.option("--seed", type=int, default=None, help="Override the config seed")
@click.pass_context
def solve(ctx: click.Context, config_path: Path, out: Optional[Path], seed: Optional[int]) -> None:
    """Solve the configured problem and write trace.csv and summary.json."""
    config = load_or_exit(ctx, config_path, output_dir=out, seed=seed)
    header(f"{config.method} on {config.problem}")
    status(f"Writing outputs to {config.output_dir}")

    try:
        code = run_suite(config)
    except PplSolveError as e:
        fail(ctx, e)

    if code not in (EXIT_OK, EXIT_DIVERGED):
        error(f"Run failed before solving; see the log for details (exit {code})")
        ctx.exit(code)

    summary = RunSummary.model_validate_json((config.output_dir / SUMMARY_FILE).read_text(encoding="utf-8"))
    if code == EXIT_DIVERGED:
        error(f"Solver diverged at iteration {summary.failure_iteration}")
        ctx.exit(code)

    key_value_table(
        {
            "iterations": summary.iterations,
            "stop reason": summary.stop_reason,
            "objective": summary.objective,
            "dual gap": summary.dual_gap,
            "wall time [s]": summary.wall_time_sec,
        }
    )
    tol = config.tolerances()
    residual_table(
        {
            "stationarity": summary.stationarity,
            "feasibility": summary.feasibility,
            "complementarity": summary.complementarity,
        },
        {
            "stationarity": tol.eps_stationarity,
            "feasibility": tol.eps_feasibility,
            "complementarity": tol.eps_complementarity,
        },
        title="Final residuals",
    )
    if summary.converged:
        success("Converged to the epsilon-KKT tolerances")
    else:
        warning("Iteration budget exhausted before the tolerances were met")
