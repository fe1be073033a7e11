"""Estimate problem constants by sampling."""

from pathlib import Path
from typing import Optional

import click

from pplsolve.commands.common import fail, load_or_exit
from pplsolve.console import header, table
from pplsolve.objects.problem_spec import estimate_constants
from pplsolve.problems.registry import build_problem
from pplsolve.validation import PplSolveError


@click.command()
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    required=True,
    help="Run config TOML",
)
@click.option("--samples", type=click.IntRange(min=1), default=None, help="Sample pairs (default: constant_samples)")
@click.pass_context
def estimate(ctx: click.Context, config_path: Path, samples: Optional[int]) -> None:
    """Compare the shipped constants of the configured problem with sampled estimates."""
    config = load_or_exit(ctx, config_path)
    try:
        problem = build_problem(config)
        sampled = estimate_constants(problem, samples or config.constant_samples, config.seed)
    except PplSolveError as e:
        fail(ctx, e)

    header(f"Constants: {problem.name}")
    shipped = problem.constants
    rows = []
    for name in ("L_f", "L_g", "M_g", "B_g", "B_u", "B_lambda"):
        rows.append([name, getattr(shipped, name) if shipped is not None else "-", getattr(sampled, name)])
    provenance = shipped.provenance if shipped is not None else "none"
    table(rows, headers=["Constant", f"Shipped ({provenance})", "Sampled"])
