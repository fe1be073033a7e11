"""Tests for the problem library."""

from typing import List

import numpy as np
import pytest

from pplsolve.dataio.groups import GroupSpec, extract_group_masks
from pplsolve.dataio.synthetic import make_synthetic_fairness_dataset
from pplsolve.objects.dataset import Dataset
from pplsolve.objects.problem_spec import ProblemSpec, evaluate_constraints, evaluate_objective
from pplsolve.problems.fairness import FairnessConfig, make_fairness_logistic, make_intersectional
from pplsolve.problems.mnpc import make_mnpc_linear
from pplsolve.problems.qp import make_nonconvex_qp
from pplsolve.problems.toys import DISK_X_STAR, make_disk_problem
from pplsolve.validation import ConstructionError


@pytest.mark.unit
class TestFairnessLogistic:
    """Demographic-parity and equalized-odds problems."""

    def test_two_point_parity_gap(self, two_point_dataset: Dataset) -> None:
        problem = make_fairness_logistic(two_point_dataset, FairnessConfig())

        values, jac = evaluate_constraints(problem, np.array([1.0]))

        # sigma(1) - sigma(-1) - 0.05
        assert values[0] == pytest.approx(0.412118, abs=1e-5)
        assert jac[0, 0] == pytest.approx(0.393224, abs=1e-5)
        assert problem.name == "fairness-dp"
        assert problem.smoothness == "nonsmooth"

    def test_zero_weights(self, two_point_dataset: Dataset) -> None:
        problem = make_fairness_logistic(two_point_dataset, FairnessConfig(tolerance_c=0.1))

        value, _ = evaluate_objective(problem, np.zeros(1))
        constraint_values, _ = evaluate_constraints(problem, np.zeros(1))

        assert value == pytest.approx(np.log(2.0))
        assert constraint_values[0] == pytest.approx(-0.1)

    def test_equalized_odds_two_constraints(self, synthetic_dataset: Dataset) -> None:
        config = FairnessConfig(constraint_kind="equalized-odds", eo_formulation="two-constraints")

        problem = make_fairness_logistic(synthetic_dataset, config)

        assert problem.name == "fairness-eo"
        assert problem.num_constraints == 2

    def test_equalized_odds_max_formulation(self, synthetic_dataset: Dataset) -> None:
        x = np.linspace(-1.0, 1.0, synthetic_dataset.dimension)
        two = make_fairness_logistic(
            synthetic_dataset, FairnessConfig(constraint_kind="equalized-odds", eo_formulation="two-constraints")
        )
        single = make_fairness_logistic(synthetic_dataset, FairnessConfig(constraint_kind="equalized-odds"))

        pair, _ = evaluate_constraints(two, x)
        worst, _ = evaluate_constraints(single, x)

        assert single.num_constraints == 1
        assert worst[0] == pytest.approx(pair.max())

    def test_empty_mask_rejected(self) -> None:
        data = Dataset(
            features=[[1.0], [-1.0]],
            labels=[1.0, -1.0],
            group_masks={"group:protected": [], "group:unprotected": [0, 1]},
        )

        with pytest.raises(ConstructionError):
            make_fairness_logistic(data, FairnessConfig())

    def test_missing_mask_rejected(self, two_point_dataset: Dataset) -> None:
        with pytest.raises(ConstructionError):
            make_fairness_logistic(two_point_dataset, FairnessConfig(group_attribute="race"))

    def test_intersectional_kind_redirected(self, two_point_dataset: Dataset) -> None:
        with pytest.raises(ConstructionError):
            make_fairness_logistic(two_point_dataset, FairnessConfig(constraint_kind="intersectional"))


@pytest.mark.unit
class TestIntersectional:
    """Hinge-excess constraints per group."""

    def test_full_dataset_group_has_no_excess(self, synthetic_dataset: Dataset) -> None:
        everyone = np.arange(synthetic_dataset.num_rows)
        problem = make_intersectional(synthetic_dataset, [everyone], FairnessConfig())

        values, _ = evaluate_constraints(problem, np.full(synthetic_dataset.dimension, 0.3))

        assert values[0] == pytest.approx(-0.05)

    def test_zero_weights(self, synthetic_dataset: Dataset) -> None:
        groups = [np.arange(10), np.arange(50, 120)]
        problem = make_intersectional(synthetic_dataset, groups, FairnessConfig(tolerance_c=0.2))

        values, _ = evaluate_constraints(problem, np.zeros(synthetic_dataset.dimension))

        np.testing.assert_allclose(values, [-0.2, -0.2])

    def test_no_groups(self, synthetic_dataset: Dataset) -> None:
        with pytest.raises(ConstructionError):
            make_intersectional(synthetic_dataset, [], FairnessConfig())

    def test_empty_group(self, synthetic_dataset: Dataset) -> None:
        with pytest.raises(ConstructionError):
            make_intersectional(synthetic_dataset, [np.array([], dtype=np.int64)], FairnessConfig())


@pytest.mark.unit
class TestMnpc:
    """Multi-class Neyman-Pearson problem."""

    def test_zero_weights(self) -> None:
        problem = make_mnpc_linear(seed=0, classes=4, kappa=[1.0, 1.0, 1.0])

        value, _ = evaluate_objective(problem, np.zeros(problem.dimension))
        values, _ = evaluate_constraints(problem, np.zeros(problem.dimension))

        assert value == pytest.approx(1.5)
        np.testing.assert_allclose(values, [0.5, 0.5, 0.5])
        assert problem.dimension == 4 * 5

    def test_wrong_threshold_count(self) -> None:
        with pytest.raises(ConstructionError):
            make_mnpc_linear(classes=3, kappa=[1.0])

    def test_single_class(self) -> None:
        with pytest.raises(ConstructionError):
            make_mnpc_linear(classes=1)


@pytest.mark.unit
class TestNonconvexQp:
    """Seeded QCQP family."""

    def test_same_seed_same_instance(self) -> None:
        x = np.linspace(-0.5, 0.5, 6)
        first = make_nonconvex_qp(seed=11, n=6, m=2)
        second = make_nonconvex_qp(seed=11, n=6, m=2)

        assert evaluate_objective(first, x)[0] == evaluate_objective(second, x)[0]
        np.testing.assert_array_equal(evaluate_constraints(first, x)[0], evaluate_constraints(second, x)[0])

    def test_origin_strictly_feasible(self, small_qp: ProblemSpec) -> None:
        values, _ = evaluate_constraints(small_qp, np.zeros(4))

        np.testing.assert_allclose(values, [-0.5, -0.5])

    @pytest.mark.parametrize("n,m", [(51, 3), (10, 11), (0, 1)])
    def test_size_limits(self, n: int, m: int) -> None:
        with pytest.raises(ConstructionError):
            make_nonconvex_qp(seed=0, n=n, m=m)


@pytest.mark.unit
class TestDisk:
    """The disk toy's analytic minimizer."""

    def test_grid_minimum_near_kkt_point(self, disk: ProblemSpec) -> None:
        grid = np.linspace(-2.0, 2.0, 401)
        xs, ys = np.meshgrid(grid, grid)
        feasible = xs**2 + ys**2 <= 1.0
        objective = np.where(feasible, xs + ys, np.inf)

        best = np.unravel_index(np.argmin(objective), objective.shape)

        np.testing.assert_allclose([xs[best], ys[best]], DISK_X_STAR, atol=0.02)
        assert evaluate_objective(disk, DISK_X_STAR)[0] == pytest.approx(-np.sqrt(2.0))


def permuted(data: Dataset, seed: int) -> Dataset:
    """The same rows in shuffled order, masks rebuilt from the protected column."""
    order = np.random.default_rng(seed).permutation(data.num_rows)
    shuffled = Dataset(features=data.features[order], labels=data.labels[order])
    return extract_group_masks(shuffled, [GroupSpec(name="group", column_index=0)], label_conditioned=True)


def library() -> List[ProblemSpec]:
    data = make_synthetic_fairness_dataset(seed=1, rows=150, dim=4)
    two_eo = FairnessConfig(constraint_kind="equalized-odds", eo_formulation="two-constraints")
    cells = [np.flatnonzero(data.features[:, 1] > 0.0), np.flatnonzero(data.features[:, 1] <= 0.0)]
    return [
        make_disk_problem(),
        make_nonconvex_qp(seed=2, n=6, m=3),
        make_mnpc_linear(seed=1, classes=3, per_class=20, dim=3),
        make_fairness_logistic(data, FairnessConfig()),
        make_fairness_logistic(data, two_eo),
        make_intersectional(data, cells, FairnessConfig()),
    ]


@pytest.mark.unit
class TestConstraintProperties:
    """Properties shared by every library constraint oracle."""

    @pytest.mark.parametrize(
        "config",
        [
            FairnessConfig(),
            FairnessConfig(constraint_kind="equalized-odds"),
            FairnessConfig(constraint_kind="equalized-odds", eo_formulation="two-constraints"),
        ],
        ids=["dp", "eo-max", "eo-two"],
    )
    def test_row_order_does_not_matter(self, synthetic_dataset: Dataset, config: FairnessConfig) -> None:
        original = make_fairness_logistic(synthetic_dataset, config)
        shuffled = make_fairness_logistic(permuted(synthetic_dataset, seed=5), config)
        rng = np.random.default_rng(0)

        for x in rng.uniform(-2.0, 2.0, size=(20, synthetic_dataset.dimension)):
            np.testing.assert_allclose(
                evaluate_constraints(shuffled, x)[0], evaluate_constraints(original, x)[0], atol=1e-12
            )

    @pytest.mark.parametrize("problem", library(), ids=lambda problem: problem.name)
    def test_jacobian_rows_bounded_by_m_g(self, problem: ProblemSpec) -> None:
        assert problem.constants is not None
        rng = np.random.default_rng(3)

        for x in problem.regularizer.sample(rng, 200):
            _, jac = evaluate_constraints(problem, x)

            assert np.linalg.norm(jac, axis=1).max() <= problem.constants.M_g * (1.0 + 1e-12)
