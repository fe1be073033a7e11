"""Helpers shared by the subcommands."""

from pathlib import Path
from typing import Any, Dict, NoReturn, Optional

import click

from pplsolve.console import error
from pplsolve.objects.run_config import RunConfig, load_config
from pplsolve.validation import PplSolveError


def load_or_exit(ctx: click.Context, path: Path, **overrides: Optional[Any]) -> RunConfig:
    """Load a run config, applying non-None overrides; print the error and exit 1 on failure."""
    try:
        config = load_config(path)
    except PplSolveError as e:
        error(str(e))
        ctx.exit(1)
    updates: Dict[str, Any] = {key: value for key, value in overrides.items() if value is not None}
    return config.model_copy(update=updates) if updates else config


def fail(ctx: click.Context, exc: Exception, code: int = 1) -> NoReturn:
    """Print ``exc`` in red and exit with ``code``."""
    error(str(exc))
    ctx.exit(code)
