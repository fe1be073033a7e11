"""Tests for configuration-driven runs."""

import json
import os
from pathlib import Path
from unittest.mock import patch

import pytest

from pplsolve.bench.outputs import read_trace
from pplsolve.bench.suite import (
    EXIT_DIVERGED,
    EXIT_FAILED,
    EXIT_OK,
    relative_spread,
    robustness_sweep,
    run_many,
    run_suite,
    solver_params,
    worker_count,
)
from pplsolve.objects.run_config import RunConfig, parse_config
from pplsolve.objects.solver_params import PenaltySchedule, PladaParams, PpalaParams
from pplsolve.problems.toys import make_disk_problem
from pplsolve.validation import ConfigurationError, DivergenceError


def disk_config(output_dir: Path, **values: object) -> RunConfig:
    settings = {"problem": "disk", "method": "plada", "output_dir": str(output_dir)}
    settings.update(values)
    return parse_config(settings)


@pytest.mark.unit
class TestSolverParams:
    """Parameters per configured method."""

    def test_per_method(self, temp_dir: Path) -> None:
        problem = make_disk_problem()

        assert isinstance(solver_params(disk_config(temp_dir), problem), PladaParams)
        assert isinstance(solver_params(disk_config(temp_dir, method="ppala"), problem), PpalaParams)
        assert isinstance(solver_params(disk_config(temp_dir, method="penalty"), problem), PenaltySchedule)

    def test_config_reaches_params(self, temp_dir: Path) -> None:
        params = solver_params(disk_config(temp_dir, max_iters=12, gamma0=0.2), make_disk_problem())

        assert params.max_iters == 12
        assert params.gamma0 == 0.2
        assert params.rho == pytest.approx(5.0)


@pytest.mark.integration
class TestRunSuite:
    """One configured run and its exit status."""

    def test_zero_budget_run(self, temp_dir: Path) -> None:
        config = disk_config(temp_dir / "run", max_iters=0)

        assert run_suite(config) == EXIT_OK

        assert len(read_trace(temp_dir / "run" / "trace.csv")) == 1
        summary = json.loads((temp_dir / "run" / "summary.json").read_text())
        assert summary["iterations"] == 0
        assert summary["stop_reason"] == "budget"
        assert summary["rate_summary"]["insufficient"] is True
        assert summary["config"]["problem"] == "disk"

    def test_unbuildable_problem(self, temp_dir: Path) -> None:
        config = parse_config(
            {
                "problem": "fairness-dp",
                "method": "plada",
                "data_path": str(temp_dir / "missing.libsvm"),
                "output_dir": str(temp_dir / "run"),
            }
        )

        assert run_suite(config) == EXIT_FAILED
        assert not (temp_dir / "run" / "summary.json").exists()

    def test_divergence_recorded(self, temp_dir: Path) -> None:
        config = disk_config(temp_dir / "run")

        with patch("pplsolve.bench.suite.solve_config", side_effect=DivergenceError("x became non-finite", 7)):
            code = run_suite(config)

        assert code == EXIT_DIVERGED
        summary = json.loads((temp_dir / "run" / "summary.json").read_text())
        assert summary["failure_iteration"] == 7
        assert summary["stop_reason"] == "diverged"
        assert summary["converged"] is False

    def test_same_seed_same_trace(self, temp_dir: Path) -> None:
        first = disk_config(temp_dir / "a", max_iters=40, init="random", seed=3)
        second = disk_config(temp_dir / "b", max_iters=40, init="random", seed=3)

        assert run_many([first, second]) == [EXIT_OK, EXIT_OK]

        rows_a = read_trace(temp_dir / "a" / "trace.csv")
        rows_b = read_trace(temp_dir / "b" / "trace.csv")
        assert len(rows_a) == 41
        strip = {"elapsed_sec"}
        assert [r.model_dump(exclude=strip) for r in rows_a] == [r.model_dump(exclude=strip) for r in rows_b]

    def test_penalty_history_in_summary(self, temp_dir: Path) -> None:
        config = disk_config(temp_dir, method="penalty", inner_iters=50, outer_rounds=2)

        assert run_suite(config) == EXIT_OK

        summary = json.loads((temp_dir / "summary.json").read_text())
        assert summary["history"]["round_penalty"] == [1.0, 10.0]


@pytest.mark.unit
class TestRunMany:
    """Parallel runs."""

    def test_duplicate_output_dirs(self, temp_dir: Path) -> None:
        config = disk_config(temp_dir, max_iters=0)

        with pytest.raises(ConfigurationError, match="output_dir"):
            run_many([config, config])

    def test_empty(self) -> None:
        assert run_many([]) == []

    def test_worker_count_from_environment(self) -> None:
        with patch.dict(os.environ, {"PPL_SOLVE_THREADS": "2"}):
            assert worker_count(5) == 2
            assert worker_count(1) == 1

    def test_worker_count_default(self) -> None:
        with patch.dict(os.environ, {}, clear=True):
            assert 1 <= worker_count(3) <= 3

    @pytest.mark.parametrize("value", ["abc", "0"])
    def test_invalid_thread_setting(self, value: str) -> None:
        with patch.dict(os.environ, {"PPL_SOLVE_THREADS": value}):
            with pytest.raises(ConfigurationError):
                worker_count(4)


@pytest.mark.unit
class TestRelativeSpread:
    """(max - min) / |mean|."""

    def test_values(self) -> None:
        assert relative_spread([1.0, 1.1]) == pytest.approx(0.1 / 1.05)

    def test_zero_mean(self) -> None:
        assert relative_spread([-1.0, 1.0]) == 2.0

    def test_empty(self) -> None:
        assert relative_spread([]) == 0.0


@pytest.mark.integration
class TestRobustnessSweep:
    """Alpha and beta grids."""

    def test_penalty_rejected(self, temp_dir: Path) -> None:
        with pytest.raises(ConfigurationError):
            robustness_sweep(disk_config(temp_dir, method="penalty"))

    def test_grids(self, temp_dir: Path) -> None:
        config = parse_config(
            {"problem": "inactive-toy", "method": "plada", "inactive_center": [0.5, -0.5], "max_iters": 300}
        )

        report = robustness_sweep(config)

        assert [run.alpha for run in report.alpha_runs] == [2.0, 5.0, 10.0, 20.0]
        assert all(run.beta == 0.1 for run in report.alpha_runs)
        assert [run.beta for run in report.beta_runs] == [0.05, 0.1, 0.3, 0.5]
        assert report.max_feasibility == 0.0
        assert all(run.converged for run in report.alpha_runs + report.beta_runs)
