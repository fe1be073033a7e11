"""Build library problems from a run config."""

import numpy as np

from pplsolve.dataio.groups import intersectional_groups
from pplsolve.dataio.loader import load_dataset
from pplsolve.dataio.synthetic import make_synthetic_fairness_dataset
from pplsolve.logging_config import get_logger
from pplsolve.objects.dataset import Dataset
from pplsolve.objects.problem_spec import ProblemSpec, estimate_constants
from pplsolve.objects.run_config import RunConfig
from pplsolve.problems.fairness import FairnessConfig, make_fairness_logistic, make_intersectional
from pplsolve.problems.mnpc import make_mnpc_linear
from pplsolve.problems.qp import make_nonconvex_qp
from pplsolve.problems.toys import make_disk_problem, make_inactive_toy, make_linear_toy

logger = get_logger(__name__)

# Default threshold cells when no intersectional columns are configured
DEFAULT_INTERSECTIONAL_COLUMNS = [1, 2]
DEFAULT_INTERSECTIONAL_THRESHOLDS = [-1.0, 0.0]


def fairness_config(config: RunConfig) -> FairnessConfig:
    kinds = {
        "fairness-dp": "demographic-parity",
        "fairness-eo": "equalized-odds",
        "intersectional": "intersectional",
    }
    return FairnessConfig(
        constraint_kind=kinds[config.problem],
        tolerance_c=config.tolerance_c,
        group_attribute=config.group_attribute,
        eo_formulation=config.eo_formulation,
        radius=config.radius,
    )


def build_dataset(config: RunConfig) -> Dataset:
    """The configured dataset file, or seeded synthetic fairness data."""
    if config.data_path is None:
        return make_synthetic_fairness_dataset(config.seed, config.synthetic_rows, config.synthetic_dim)
    return load_dataset(
        config.data_path,
        data_format=config.data_format,
        label_column=config.label_column,
        positive_label=config.positive_label,
        zero_one_labels=config.zero_one_labels,
        groups=config.groups,
        label_conditioned=config.problem == "fairness-eo",
        scale_features=config.scale_features,
    )


def _build(config: RunConfig) -> ProblemSpec:
    name = config.problem
    if name == "disk":
        return make_disk_problem()
    if name == "qp":
        return make_nonconvex_qp(config.seed, config.qp_n, config.qp_m)
    if name == "mnpc":
        return make_mnpc_linear(
            seed=config.seed,
            classes=config.classes,
            per_class=config.per_class,
            kappa=config.thresholds,
            theta=config.theta,
            dim=config.mnpc_dim,
        )
    if name == "linear-toy":
        return make_linear_toy()
    if name == "inactive-toy":
        return make_inactive_toy(np.array(config.inactive_center, dtype=np.float64))

    data = build_dataset(config)
    settings = fairness_config(config)
    if name == "intersectional":
        columns = config.intersectional_columns or DEFAULT_INTERSECTIONAL_COLUMNS
        thresholds = config.intersectional_thresholds or DEFAULT_INTERSECTIONAL_THRESHOLDS
        groups = intersectional_groups(data, columns, thresholds, config.min_fraction)
        return make_intersectional(data, list(groups.values()), settings)
    return make_fairness_logistic(data, settings)


def build_problem(config: RunConfig) -> ProblemSpec:
    """Construct the configured problem, sampling constants when it ships none.

    Raises:
        ConstructionError: If the instance cannot be assembled
        ConfigurationError: If the dataset cannot be read
        ParseError: If the dataset is malformed

    Example:
        >>> build_problem(parse_config({"problem": "disk", "method": "plada"})).name
        'disk'
    """
    problem = _build(config)
    if problem.constants is None:
        problem = problem.with_constants(estimate_constants(problem, config.constant_samples, config.seed))
    logger.info(f"built {problem.name}: n={problem.dimension}, m={problem.num_constraints}, {problem.smoothness}")
    return problem
