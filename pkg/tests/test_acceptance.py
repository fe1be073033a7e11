"""Long solver runs checked against known solutions and the convergence guarantees."""

import time
from typing import Callable, Dict, List, Optional

import numpy as np
import pytest

from pplsolve.bench.invariant_suite import CLOSURE_TOL, InvariantReport, run_invariant_suite
from pplsolve.bench.suite import robustness_sweep
from pplsolve.dataio.synthetic import make_synthetic_fairness_dataset
from pplsolve.diagnostics.rates import rate_summary
from pplsolve.objects.problem_spec import ProblemSpec
from pplsolve.objects.run_config import parse_config
from pplsolve.objects.solve_result import SolveResult
from pplsolve.objects.solver_params import derive_plada_params, derive_ppala_params
from pplsolve.problems.fairness import FairnessConfig, make_fairness_logistic
from pplsolve.problems.mnpc import make_mnpc_linear
from pplsolve.problems.qp import make_nonconvex_qp
from pplsolve.problems.toys import DISK_NU_STAR, DISK_X_STAR, make_disk_problem
from pplsolve.solvers.plada import run_plada
from pplsolve.solvers.ppala import run_ppala
from pplsolve.validation import ConfigurationError

# Iterations of the fixed-budget runs; checkpoints sit at T, 4T and 16T
T = 1000
FULL_BUDGET = {"max_iters": 16 * T, "early_stop": False}


def assert_step_invariants(report: InvariantReport) -> None:
    assert report.relations_passed, report.relation_failures
    assert report.nu_negative == 0
    assert report.nu_min >= -1e-10
    assert report.interior_nu_max <= 1e-10
    assert report.u_negative == 0
    assert report.max_lambda_closure <= CLOSURE_TOL
    assert report.max_z_closure <= CLOSURE_TOL
    if report.descent_enforced:
        assert report.descent_failures == 0, report.min_descent_slack


def run_method(problem: ProblemSpec, method: str, overrides: Dict[str, object]) -> SolveResult:
    if method == "plada":
        return run_plada(problem, derive_plada_params(10.0, 0.1, problem.constants, overrides))
    return run_ppala(problem, derive_ppala_params(10.0, 0.2, problem.constants, overrides))


def small_qp() -> ProblemSpec:
    return make_nonconvex_qp(seed=0, n=2, m=1)


def worst_residual(result: SolveResult, iteration: int) -> float:
    row = next(row for row in result.trace if row.iter == iteration)
    return max(row.stationarity, row.feasibility, row.complementarity)


def grid_minimum() -> float:
    grid = np.linspace(-2.0, 2.0, 401)
    xs, ys = np.meshgrid(grid, grid)
    return float(np.min(np.where(xs**2 + ys**2 <= 1.0, xs + ys, np.inf)))


@pytest.mark.slow
class TestDiskRecovery:
    """Both solvers find the analytic KKT pair of the disk problem with default settings."""

    @pytest.mark.parametrize("method", ["plada", "ppala"])
    def test_default_settings(self, disk: ProblemSpec, method: str) -> None:
        result = run_method(disk, method, {})

        assert result.converged
        assert result.iterations <= 50000
        assert result.wall_time_sec < 5.0
        np.testing.assert_allclose(result.x, DISK_X_STAR, atol=1e-3)
        assert result.nu[0] == pytest.approx(DISK_NU_STAR, abs=1e-2)
        assert result.report.stationarity <= 1e-3
        assert result.report.feasibility <= 1e-3
        assert result.report.complementarity <= 1e-3
        assert result.x.sum() == pytest.approx(grid_minimum(), abs=2e-2)

    def test_ppala_unit_schedule(self, disk: ProblemSpec) -> None:
        result = run_method(disk, "ppala", {"p": 1.0, "q": 1.0})

        assert result.converged
        assert result.iterations <= 50000
        np.testing.assert_allclose(result.x, DISK_X_STAR, atol=1e-2)


@pytest.mark.slow
class TestDualGapAndResiduals:
    """|lam - mu| and the residuals shrink between T and 4T."""

    @pytest.mark.parametrize(
        "build,method,final_gap",
        [
            (make_disk_problem, "plada", 1e-3),
            (make_disk_problem, "ppala", 1e-3),
            (small_qp, "plada", None),
            (small_qp, "ppala", 1e-3),
        ],
        ids=["disk-plada", "disk-ppala", "qp-plada", "qp-ppala"],
    )
    def test_dual_gap_and_residuals_shrink(
        self, build: Callable[[], ProblemSpec], method: str, final_gap: Optional[float]
    ) -> None:
        result = run_method(build(), method, FULL_BUDGET)

        gaps = {row.iter: row.dual_gap for row in result.trace}
        assert result.iterations == 16 * T
        assert gaps[4 * T] <= gaps[T]
        assert gaps[16 * T] <= gaps[4 * T]
        if final_gap is not None:
            assert gaps[16 * T] <= final_gap
        assert worst_residual(result, 4 * T) <= worst_residual(result, T) + 1e-9
        assert worst_residual(result, 16 * T) <= worst_residual(result, 4 * T) + 1e-9


@pytest.mark.slow
class TestRateRatios:
    """Running averages at T and 4T fall at the guaranteed rates."""

    @pytest.mark.parametrize(
        "build,method",
        [(make_disk_problem, "plada"), (make_disk_problem, "ppala"), (small_qp, "plada"), (small_qp, "ppala")],
        ids=["disk-plada", "disk-ppala", "qp-plada", "qp-ppala"],
    )
    def test_rate_ratios(self, build: Callable[[], ProblemSpec], method: str) -> None:
        result = run_method(build(), method, {"max_iters": 4 * T, "early_stop": False})

        report = rate_summary(result.trace, T=T)

        assert not report.insufficient
        for name, bound in (("stationarity", 0.5), ("feasibility", 0.5), ("complementarity", 0.75)):
            ratio = report.ratios[name]
            assert ratio.status == "converged" or ratio.ratio <= bound, (name, ratio)


@pytest.mark.slow
class TestInvariantRuns:
    """Every step of longer runs satisfies the relations.

    Descent is asserted for PPALA on every smooth library problem and for PLADA
    in exact-subproblem mode on the 1-D toy; linearized PLADA (disk and
    fairness-dp) reports it only. fairness-dp has non-smooth constraints, so
    PPALA does not run on it.
    """

    def test_disk_both_methods(self) -> None:
        disk = make_disk_problem()
        plada = derive_plada_params(10.0, 0.1, disk.constants, {"max_iters": 3000, "early_stop": False})
        ppala = derive_ppala_params(10.0, 0.2, disk.constants, {"max_iters": 3000, "early_stop": False})

        plada_report, _ = run_invariant_suite(disk, "plada", plada)
        ppala_report, _ = run_invariant_suite(disk, "ppala", ppala)

        assert plada_report.passed
        assert not plada_report.descent_enforced
        assert ppala_report.passed
        assert ppala_report.descent_enforced
        assert ppala_report.descent_failures == 0
        assert_step_invariants(plada_report)
        assert_step_invariants(ppala_report)

    def test_linear_toy_exact_descent(self, linear_toy: ProblemSpec) -> None:
        params = derive_plada_params(
            10.0, 0.1, linear_toy.constants, {"max_iters": 2000, "x_update_mode": "exact-subproblem"}
        )

        report, _ = run_invariant_suite(linear_toy, "plada", params, x0=np.array([0.5]))

        assert report.descent_enforced
        assert report.descent_failures == 0
        assert report.passed

    @pytest.mark.parametrize(
        "build",
        [
            lambda: make_nonconvex_qp(seed=1, n=10, m=3),
            lambda: make_mnpc_linear(seed=0, classes=3, per_class=30),
        ],
        ids=["qp", "mnpc"],
    )
    def test_smooth_problems(self, build: Callable[[], ProblemSpec]) -> None:
        problem = build()
        params = derive_ppala_params(10.0, 0.2, problem.constants, {"max_iters": 2000, "early_stop": False})

        report, _ = run_invariant_suite(problem, "ppala", params)

        assert report.descent_enforced
        assert report.descent_steps == 2000
        assert_step_invariants(report)

    def test_fairness(self) -> None:
        data = make_synthetic_fairness_dataset(seed=0, rows=500)
        problem = make_fairness_logistic(data, FairnessConfig())
        params = derive_plada_params(10.0, 0.1, problem.constants, {"max_iters": 2000, "early_stop": False})

        report, _ = run_invariant_suite(problem, "plada", params)

        assert not report.descent_enforced
        assert_step_invariants(report)

    def test_fairness_rejects_ppala(self) -> None:
        data = make_synthetic_fairness_dataset(seed=0, rows=100)
        problem = make_fairness_logistic(data, FairnessConfig())
        params = derive_ppala_params(10.0, 0.2, problem.constants, {"max_iters": 10})

        with pytest.raises(ConfigurationError, match="smooth"):
            run_invariant_suite(problem, "ppala", params)

    def test_lagrangian_windows_after_settling(self) -> None:
        problem = small_qp()
        params = derive_ppala_params(10.0, 0.2, problem.constants, {"max_iters": 13 * T, "early_stop": False})

        report, _ = run_invariant_suite(problem, "ppala", params)

        assert len(report.window_ranges) == 3
        assert report.window_trend is True
        assert report.passed


@pytest.mark.slow
class TestLibraryRuns:
    """Configured runs on the library problems."""

    def test_fairness_sweep_is_robust(self) -> None:
        config = parse_config(
            {"problem": "fairness-dp", "method": "plada", "synthetic_rows": 500, "max_iters": 20000}
        )
        start = time.perf_counter()

        report = robustness_sweep(config)

        assert time.perf_counter() - start < 180.0
        assert report.alpha_spread <= 0.1
        assert report.beta_spread <= 0.1
        assert report.max_feasibility <= 2e-2

    def test_small_qp_converges(self) -> None:
        problem = make_nonconvex_qp(seed=7, n=2, m=1)
        params = derive_ppala_params(10.0, 0.2, problem.constants, {"max_iters": 50000})

        result = run_ppala(problem, params)

        assert result.converged

    def test_best_iterate_recorded(self) -> None:
        disk = make_disk_problem()
        params = derive_plada_params(10.0, 0.1, disk.constants, {"max_iters": 2000, "early_stop": False})

        result = run_plada(disk, params)
        best: List[float] = [row.stationarity for row in result.trace if row.iter == result.best_index]

        assert len(best) == 1
        assert 0 <= result.best_index <= 2000
