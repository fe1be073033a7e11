"""pplsolve CLI application entry point.

Subcommands:

- ``solve``: run one configured solve and write trace.csv and summary.json
- ``check``: run the per-step invariant suite against a config
- ``rate``: T-vs-4T rate report of an existing trace
- ``estimate``: shipped versus sampled problem constants
- ``sweep``: alpha/beta robustness sweep
"""

import importlib.metadata

import click
from dotenv import find_dotenv, load_dotenv

from pplsolve.commands.check import check
from pplsolve.commands.estimate import estimate
from pplsolve.commands.rate import rate
from pplsolve.commands.solve import solve
from pplsolve.commands.sweep import sweep
from pplsolve.console import brand, info, newline
from pplsolve.logging_config import setup_logging


@click.group()
@click.option(
    "--verbose",
    "-v",
    is_flag=True,
    help="Enable verbose logging (DEBUG level)",
)
@click.option(
    "--log-file",
    type=click.Path(dir_okay=False),
    help="Write logs to file",
)
@click.pass_context
def cli(ctx: click.Context, verbose: bool, log_file: str) -> None:
    """Single-loop primal-dual solvers for non-convex constrained problems.

    Example:
        >>> pplsolve solve --config configs/disk-plada.toml --out runs/disk
    """
    logger = setup_logging(verbose=verbose, log_file=log_file)
    ctx.ensure_object(dict)
    ctx.obj["logger"] = logger


cli.add_command(solve)
cli.add_command(check)
cli.add_command(rate)
cli.add_command(estimate)
cli.add_command(sweep)


def package_version() -> str:
    try:
        return importlib.metadata.version("pplsolve")
    except importlib.metadata.PackageNotFoundError:
        return "unknown"


def start_cli() -> click.Group:
    """Load an optional .env file, print the banner and run the CLI group.

    PPL_SOLVE_THREADS (suite parallelism) is typically set in .env.
    """
    env_file = find_dotenv(usecwd=True)
    if env_file:
        load_dotenv(env_file)

    brand("pplsolve")
    info(f"Version: {package_version()}")
    if env_file:
        info(f"Environment loaded from: {env_file}")
    newline()

    return cli(obj={})  # type: ignore
