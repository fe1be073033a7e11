"""Terminal output of the pplsolve commands.

Solver progress goes through the logger; this module renders the results a
command reports at the end (residual tables, sweep grids, verdicts). NO_COLOR
and CI turn styling off.
"""

from __future__ import annotations

import os
from typing import Any, List, Mapping, Optional

from rich.console import Console
from rich.rule import Rule
from rich.table import Table

_console: Optional[Console] = None

_TRUTHY = ("1", "true", "yes")


def get_console() -> Console:
    """The shared Console, created on first use from NO_COLOR and CI."""
    global _console
    if _console is None:
        no_color = os.getenv("NO_COLOR", "").lower() in _TRUTHY
        plain = no_color or os.getenv("CI", "").lower() in _TRUTHY
        _console = Console(force_terminal=not plain, no_color=no_color, highlight=False)
    return _console


def format_cell(value: Any) -> str:
    """Floats in compact scientific/fixed notation, everything else via str()."""
    if isinstance(value, bool) or value is None:
        return str(value)
    if isinstance(value, float):
        return f"{value:.4g}" if 1e-3 <= abs(value) < 1e5 or value == 0.0 else f"{value:.3e}"
    return str(value)


def _is_number(value: Any) -> bool:
    """Numeric cells, bools excluded."""
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def success(message: str, emoji: bool = True) -> None:
    """Print a green confirmation line.

    Args:
        message: Text to print
        emoji: Prefix the line with a check mark
    """
    get_console().print(f"[green]{'✓ ' if emoji else ''}{message}[/green]")


def error(message: str, emoji: bool = True) -> None:
    """Print a red failure line.

    Args:
        message: Text to print
        emoji: Prefix the line with a cross
    """
    get_console().print(f"[red]{'✗ ' if emoji else ''}{message}[/red]")


def warning(message: str, emoji: bool = True) -> None:
    """Print a yellow warning line.

    Args:
        message: Text to print
        emoji: Prefix the line with a warning sign
    """
    get_console().print(f"[yellow]{'⚠ ' if emoji else ''}{message}[/yellow]")


def info(message: str, bold: bool = False) -> None:
    """Print plain text.

    Args:
        message: Text to print
        bold: Render in bold
    """
    get_console().print(message, style="bold" if bold else "")


def status(message: str) -> None:
    """Print a blue progress line, e.g. the run about to start."""
    get_console().print(f"[blue]{message}[/blue]")


def brand(message: str) -> None:
    """Print a magenta bold banner line."""
    get_console().print(message, style="magenta bold")


def newline() -> None:
    """Print an empty line."""
    get_console().print()


def header(title: str, style: str = "cyan") -> None:
    """Section rule above a command's report."""
    get_console().print(Rule(title, style=style))


def table(
    data: List[List[Any]],
    headers: List[str],
    title: Optional[str] = None,
    show_lines: bool = False,
) -> None:
    """Display rows in a Rich table; all-numeric columns are right-aligned.

    Args:
        data: Rows of cell values, floats rendered by :func:`format_cell`
        headers: Column headers
        title: Optional table title
        show_lines: Draw lines between rows
    """
    rich_table = Table(title=title, header_style="bold cyan", show_lines=show_lines, border_style="dim")
    for position, name in enumerate(headers):
        numeric = bool(data) and all(_is_number(row[position]) for row in data)
        rich_table.add_column(name, justify="right" if numeric else "left")
    for row in data:
        rich_table.add_row(*[format_cell(cell) for cell in row])
    get_console().print(rich_table)


def key_value_table(values: Mapping[str, Any], title: Optional[str] = None) -> None:
    """Two-column table of named values."""
    table([[key, value] for key, value in values.items()], headers=["Quantity", "Value"], title=title)


def residual_table(
    residuals: Mapping[str, Optional[float]],
    tolerances: Mapping[str, float],
    title: Optional[str] = None,
) -> None:
    """Residuals next to their tolerances, green when within and red otherwise.

    Residuals without a tolerance entry are printed unstyled.

    Example:
        >>> residual_table({"feasibility": 2e-4}, {"feasibility": 1e-3})
    """
    rich_table = Table(title=title, header_style="bold cyan", border_style="dim")
    rich_table.add_column("Residual")
    rich_table.add_column("Value", justify="right")
    rich_table.add_column("Tolerance", justify="right")
    for name, value in residuals.items():
        tol = tolerances.get(name)
        cell = format_cell(value)
        if tol is not None and value is not None:
            cell = f"[green]{cell}[/green]" if value <= tol else f"[red]{cell}[/red]"
        rich_table.add_row(name, cell, format_cell(tol) if tol is not None else "-")
    get_console().print(rich_table)
