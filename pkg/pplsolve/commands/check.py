"""Run the per-step invariant suite against a config."""

from pathlib import Path

import click

from pplsolve.bench.invariant_suite import run_invariant_suite
from pplsolve.bench.suite import solver_params
from pplsolve.commands.common import fail, load_or_exit
from pplsolve.console import error, header, key_value_table, success, table, warning
from pplsolve.diagnostics.step_checks import Mode
from pplsolve.problems.registry import build_problem
from pplsolve.solvers.loop import initial_point
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
def check(ctx: click.Context, config_path: Path) -> None:
    """Check the step relations, descent, certificate sign and closure at every iteration."""
    config = load_or_exit(ctx, config_path)
    if config.method == "penalty":
        error("The invariant suite applies to plada and ppala only")
        ctx.exit(1)
    header(f"Invariants: {config.method} on {config.problem}")

    try:
        problem = build_problem(config)
        params = solver_params(config, problem)
        mode: Mode = "plada" if config.method == "plada" else "ppala"
        x0 = initial_point(problem, config.init, config.seed)
        report, result = run_invariant_suite(problem, mode, params, x0=x0)
    except PplSolveError as e:
        fail(ctx, e)

    rows = [
        [name, report.relation_steps - failures, report.relation_steps]
        for name, failures in report.relation_failures.items()
    ]
    rows.append(
        [
            "descent" + ("" if report.descent_enforced else " (report only)"),
            report.descent_steps - report.descent_failures,
            report.descent_steps,
        ]
    )
    table(rows, headers=["Check", "Passed", "Evaluated"], title="Per-step checks")
    key_value_table(
        {
            "steps": report.steps,
            "min certificate coordinate": report.nu_min,
            "max |nu| on unclipped slack": report.interior_nu_max,
            "negative slack steps": report.u_negative,
            "max lambda closure": report.max_lambda_closure,
            "max z closure": report.max_z_closure,
            "final feasibility": result.report.feasibility,
        }
    )
    if report.passed:
        success("All invariants held")
        if not report.descent_enforced and report.descent_failures:
            warning(f"{report.descent_failures} report-only descent checks failed")
    else:
        error("Invariant violations found")
        ctx.exit(1)
