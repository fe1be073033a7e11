"""Tests for the quadratic-penalty baseline."""

import numpy as np
import pytest

from pplsolve.dataio.synthetic import make_synthetic_fairness_dataset
from pplsolve.objects.constants import ConstantEstimates
from pplsolve.objects.kkt_report import KktTolerances
from pplsolve.objects.problem_spec import ProblemSpec
from pplsolve.objects.solver_params import PenaltySchedule
from pplsolve.problems.fairness import FairnessConfig, make_fairness_logistic
from pplsolve.problems.toys import make_constant_toy
from pplsolve.solvers.penalty import penalty_step_size, quadratic_penalty_baseline
from pplsolve.validation import ConfigurationError


@pytest.mark.unit
class TestPenaltyStepSize:
    """0.9 / (L_f + rho (M_g^2 + L_g B_g))."""

    def test_formula(self) -> None:
        constants = ConstantEstimates(L_f=1.0, L_g=2.0, M_g=1.0, B_g=0.5)

        assert penalty_step_size(constants, 2.0) == pytest.approx(0.9 / (1.0 + 2.0 * (1.0 + 1.0)))

    def test_zero_constants(self) -> None:
        with pytest.raises(ConfigurationError):
            penalty_step_size(ConstantEstimates(), 1.0)


@pytest.mark.integration
class TestPenaltyBaseline:
    """Runs of the outer penalty loop."""

    def test_feasibility_decreases_across_rounds(self, disk: ProblemSpec) -> None:
        schedule = PenaltySchedule(rho0=1.0, growth=10.0, inner_iters=2000, outer_rounds=3)

        result = quadratic_penalty_baseline(disk, schedule)

        feasibility = result.history["round_feasibility"]
        assert len(feasibility) >= 2
        assert all(later < earlier for earlier, later in zip(feasibility, feasibility[1:]))
        assert result.history["round_penalty"][:2] == [1.0, 10.0]

    def test_constant_penalty_plateaus(self, disk: ProblemSpec) -> None:
        schedule = PenaltySchedule(rho0=1.0, growth=1.0, inner_iters=2000, outer_rounds=3)

        result = quadratic_penalty_baseline(disk, schedule)

        feasibility = result.history["round_feasibility"]
        assert len(feasibility) == 3
        assert min(feasibility) > 1e-2
        assert feasibility[-1] == pytest.approx(feasibility[-2], rel=1e-2)
        assert not result.converged

    def test_strictly_feasible_converges_in_first_round(self, inactive_toy: ProblemSpec) -> None:
        schedule = PenaltySchedule(rho0=1.0, growth=10.0, inner_iters=500, outer_rounds=3)

        result = quadratic_penalty_baseline(inactive_toy, schedule)

        assert result.converged
        assert result.stop_reason == "converged"
        assert len(result.history["round_feasibility"]) == 1
        np.testing.assert_allclose(result.x, [0.5, -0.5], atol=1e-3)

    def test_trace_has_shared_columns(self, disk: ProblemSpec) -> None:
        schedule = PenaltySchedule(inner_iters=10, outer_rounds=2, tol=KktTolerances.uniform(1e-12))

        result = quadratic_penalty_baseline(disk, schedule)

        assert [row.iter for row in result.trace] == list(range(21))
        assert result.method == "penalty"

    def test_nonsmooth_problem_rejected(self) -> None:
        data = make_synthetic_fairness_dataset(seed=0, rows=40, dim=3)
        problem = make_fairness_logistic(data, FairnessConfig())

        with pytest.raises(ConfigurationError):
            quadratic_penalty_baseline(problem, PenaltySchedule())

    def test_missing_constants_rejected(self) -> None:
        with pytest.raises(ConfigurationError):
            quadratic_penalty_baseline(make_constant_toy(), PenaltySchedule())
