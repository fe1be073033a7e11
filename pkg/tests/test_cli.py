"""Tests for the command-line interface."""

import logging
from pathlib import Path
from typing import Generator

import pytest
from click.testing import CliRunner

import pplsolve.console
from pplsolve.main import cli


@pytest.fixture(autouse=True)
def reset_output() -> Generator[None, None, None]:
    """Fresh console singleton and no leftover log handlers."""
    pplsolve.console._console = None
    yield
    pplsolve.console._console = None
    logger = logging.getLogger("pplsolve")
    for handler in logger.handlers:
        handler.close()
    logger.handlers = []


def write_config(directory: Path, body: str) -> Path:
    path = directory / "run.toml"
    path.write_text(body + f'\noutput_dir = "{(directory / "out").as_posix()}"\n')
    return path


@pytest.mark.integration
class TestCli:
    """Subcommands end to end."""

    def test_solve(self, temp_dir: Path) -> None:
        config = write_config(temp_dir, 'problem = "disk"\nmethod = "plada"\nmax_iters = 20')

        result = CliRunner().invoke(cli, ["solve", "--config", str(config)])

        assert result.exit_code == 0, result.output
        assert (temp_dir / "out" / "trace.csv").exists()
        assert "Final residuals" in result.output

    def test_solve_with_out_and_seed(self, temp_dir: Path) -> None:
        config = write_config(temp_dir, 'problem = "disk"\nmethod = "ppala"\nmax_iters = 5\ninit = "random"')
        out = temp_dir / "other"

        result = CliRunner().invoke(cli, ["solve", "--config", str(config), "--out", str(out), "--seed", "4"])

        assert result.exit_code == 0, result.output
        assert (out / "summary.json").exists()
        assert not (temp_dir / "out").exists()

    def test_unknown_key(self, temp_dir: Path) -> None:
        config = write_config(temp_dir, 'problem = "disk"\nmethod = "plada"\nalhpa = 2.0')

        result = CliRunner().invoke(cli, ["solve", "--config", str(config)])

        assert result.exit_code == 1
        assert "alhpa" in result.output

    def test_check(self, temp_dir: Path) -> None:
        config = write_config(
            temp_dir, 'problem = "inactive-toy"\nmethod = "plada"\ninactive_center = [0.5, -0.5]\nmax_iters = 100'
        )

        result = CliRunner().invoke(cli, ["check", "--config", str(config)])

        assert result.exit_code == 0, result.output
        assert "All invariants held" in result.output

    def test_check_rejects_penalty(self, temp_dir: Path) -> None:
        config = write_config(temp_dir, 'problem = "disk"\nmethod = "penalty"')

        result = CliRunner().invoke(cli, ["check", "--config", str(config)])

        assert result.exit_code == 1

    def test_rate(self, temp_dir: Path) -> None:
        config = write_config(temp_dir, 'problem = "disk"\nmethod = "plada"\nmax_iters = 40')
        runner = CliRunner()
        assert runner.invoke(cli, ["solve", "--config", str(config)]).exit_code == 0

        result = runner.invoke(cli, ["rate", "--trace", str(temp_dir / "out" / "trace.csv"), "--horizon", "10"])

        assert result.exit_code == 0, result.output
        assert "Uniformly drawn iterates" in result.output

    def test_rate_bad_trace(self, temp_dir: Path) -> None:
        trace = temp_dir / "trace.csv"
        trace.write_text("a,b\n1,2\n")

        result = CliRunner().invoke(cli, ["rate", "--trace", str(trace)])

        assert result.exit_code == 1

    def test_estimate(self, temp_dir: Path) -> None:
        config = write_config(temp_dir, 'problem = "disk"\nmethod = "plada"')

        result = CliRunner().invoke(cli, ["estimate", "--config", str(config), "--samples", "200"])

        assert result.exit_code == 0, result.output
        assert "M_g" in result.output

    def test_sweep(self, temp_dir: Path) -> None:
        config = write_config(
            temp_dir, 'problem = "inactive-toy"\nmethod = "plada"\ninactive_center = [0.5, -0.5]\nmax_iters = 100'
        )

        result = CliRunner().invoke(cli, ["sweep", "--config", str(config)])

        assert result.exit_code == 0, result.output
        assert "objective spread over alpha" in result.output
