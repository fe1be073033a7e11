"""Fairness-constrained linear classification.

The objective is the average logistic loss of a linear scorer. Constraints bound
the gap between the sigmoid-smoothed positive-prediction rates of the protected
and unprotected groups (demographic parity), the same gap restricted to each
label (equalized odds), or the hinge-loss excess of intersectional groups over
the whole dataset. The absolute values and hinges make every constraint
non-smooth, so these problems are solved with PLADA.

Group masks follow the naming of :func:`pplsolve.dataio.groups.extract_group_masks`:
``<attr>:protected``, ``<attr>:unprotected`` and, for equalized odds, the
``:pos`` / ``:neg`` label-conditioned variants.
"""

from typing import Callable, List, Literal, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, Field
from scipy.special import expit, log_expit

from pplsolve.logging_config import get_logger
from pplsolve.objects.constants import ConstantEstimates
from pplsolve.objects.dataset import Dataset, FeatureMatrix
from pplsolve.objects.problem_spec import ObjectiveOracle, ProblemSpec
from pplsolve.objects.regularizer import Regularizer
from pplsolve.validation import ConstructionError

logger = get_logger(__name__)

DEFAULT_TOLERANCE_C = 0.05
DEFAULT_RADIUS = 100.0


class FairnessConfig(BaseModel):
    """Constraint selection for the fairness problems.

    Attributes:
        constraint_kind: Which fairness notion to constrain
        tolerance_c: Allowed gap; constraints read gap - c <= 0
        group_attribute: Prefix of the protected/unprotected masks in the dataset
        eo_formulation: Equalized odds as one max-constraint or two separate constraints
        radius: Half-width R of the box [-R, R]^d on the weights
    """

    constraint_kind: Literal["demographic-parity", "equalized-odds", "intersectional"] = "demographic-parity"
    tolerance_c: float = Field(default=DEFAULT_TOLERANCE_C, ge=0.0)
    group_attribute: str = "group"
    eo_formulation: Literal["max-single-constraint", "two-constraints"] = "max-single-constraint"
    radius: float = Field(default=DEFAULT_RADIUS, gt=0.0)


def _row_norm_max(features: FeatureMatrix) -> float:
    if features.shape[0] == 0:
        return 0.0
    squared = features.multiply(features).sum(axis=1) if hasattr(features, "multiply") else (features**2).sum(axis=1)
    return float(np.sqrt(np.max(squared)))


def _mean_squared_row_norm(features: FeatureMatrix) -> float:
    squared = features.multiply(features).sum() if hasattr(features, "multiply") else float((features**2).sum())
    return float(squared) / features.shape[0]


def logistic_objective(data: Dataset) -> ObjectiveOracle:
    """f(x) = mean_i log(1 + exp(-y_i x'a_i)) and its gradient."""
    A = data.features
    y = data.labels
    n_rows = data.num_rows

    def objective(x: np.ndarray) -> Tuple[float, np.ndarray]:
        margins = y * (A @ x)
        value = -float(np.mean(log_expit(margins)))
        weights = -y * expit(-margins) / n_rows
        return value, np.asarray(A.T @ weights).reshape(-1)

    return objective


def _group_rate(features: FeatureMatrix) -> Callable[[np.ndarray], Tuple[float, np.ndarray]]:
    """x -> (mean sigma(x'a_i), gradient) over the rows of ``features``."""
    count = features.shape[0]

    def rate(x: np.ndarray) -> Tuple[float, np.ndarray]:
        probs = expit(features @ x)
        slope = probs * (1.0 - probs) / count
        return float(np.mean(probs)), np.asarray(features.T @ slope).reshape(-1)

    return rate


def _rate_gap(data: Dataset, first: str, second: str) -> Tuple[Callable[[np.ndarray], Tuple[float, np.ndarray]], float]:
    """(x -> (gap, gradient of gap), Lipschitz bound of the gap) for two masks."""
    first_rows = data.rows(data.mask(first))
    second_rows = data.rows(data.mask(second))
    first_rate = _group_rate(first_rows)
    second_rate = _group_rate(second_rows)

    def gap(x: np.ndarray) -> Tuple[float, np.ndarray]:
        value_a, grad_a = first_rate(x)
        value_b, grad_b = second_rate(x)
        return value_a - value_b, grad_a - grad_b

    bound = 0.25 * (_row_norm_max(first_rows) + _row_norm_max(second_rows))
    return gap, bound


def _abs_gap_rows(
    gaps: Sequence[Callable[[np.ndarray], Tuple[float, np.ndarray]]], x: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """|gap_j(x)| with subgradient sign(gap_j) * grad gap_j (zero at a kink)."""
    values = []
    rows = []
    for gap in gaps:
        value, grad = gap(x)
        values.append(abs(value))
        rows.append(np.sign(value) * grad)
    return np.array(values), np.vstack(rows)


def make_fairness_logistic(data: Dataset, config: FairnessConfig) -> ProblemSpec:
    """Logistic loss subject to a demographic-parity or equalized-odds constraint.

    Raises:
        ConstructionError: If a required group mask is missing or empty, or the
            constraint kind is intersectional (use :func:`make_intersectional`)

    Example:
        >>> problem = make_fairness_logistic(dataset, FairnessConfig())
        >>> evaluate_objective(problem, np.zeros(dataset.dimension))[0]
        0.6931471805599453
    """
    attr = config.group_attribute
    c = config.tolerance_c

    if config.constraint_kind == "demographic-parity":
        gap, bound = _rate_gap(data, f"{attr}:protected", f"{attr}:unprotected")

        def constraints(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
            values, jac = _abs_gap_rows([gap], x)
            return values - c, jac

        num_constraints = 1
        m_g = bound
        name = "fairness-dp"
    elif config.constraint_kind == "equalized-odds":
        gap_pos, bound_pos = _rate_gap(data, f"{attr}:protected:pos", f"{attr}:unprotected:pos")
        gap_neg, bound_neg = _rate_gap(data, f"{attr}:protected:neg", f"{attr}:unprotected:neg")
        name = "fairness-eo"

        if config.eo_formulation == "two-constraints":

            def constraints(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
                values, jac = _abs_gap_rows([gap_pos, gap_neg], x)
                return values - c, jac

            num_constraints = 2
            m_g = float(np.hypot(bound_pos, bound_neg))
        else:

            def constraints(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
                values, jac = _abs_gap_rows([gap_pos, gap_neg], x)
                # argmax returns the first maximizer, so ties go to the lower index
                active = int(np.argmax(values))
                return np.array([values[active] - c]), jac[active : active + 1]

            num_constraints = 1
            m_g = max(bound_pos, bound_neg)
    else:
        raise ConstructionError("intersectional constraints are built by make_intersectional")

    constants = ConstantEstimates(
        L_f=0.25 * _mean_squared_row_norm(data.features),
        L_g=0.0,
        M_g=m_g,
        B_g=float(np.sqrt(num_constraints)) * (1.0 + c),
    )
    logger.debug(f"{name}: {data.num_rows} rows, d={data.dimension}, c={c}, M_g={m_g:.4g}")
    return ProblemSpec(
        name=name,
        dimension=data.dimension,
        num_constraints=num_constraints,
        objective=logistic_objective(data),
        constraints=constraints,
        regularizer=Regularizer.uniform_box(data.dimension, config.radius),
        constants=constants,
        smoothness="nonsmooth",
    )


def make_intersectional(data: Dataset, groups: List[np.ndarray], config: FairnessConfig) -> ProblemSpec:
    """Logistic loss subject to one hinge-excess constraint per group.

    g_G(x) = mean_{i in G} [1 - y_i x'a_i]+ - mean_i [1 - y_i x'a_i]+ - c, with the
    hinge subgradient taken as zero at the kink.

    Raises:
        ConstructionError: If no groups are given or a group is empty
    """
    if len(groups) == 0:
        raise ConstructionError("intersectional problem needs at least one group")
    index_sets = []
    for position, group in enumerate(groups):
        idx = np.unique(np.asarray(group, dtype=np.int64))
        if idx.size == 0:
            raise ConstructionError(f"intersectional group {position} is empty")
        if idx.min() < 0 or idx.max() >= data.num_rows:
            raise ConstructionError(f"intersectional group {position} references rows outside the dataset")
        index_sets.append(idx)

    A = data.features
    y = data.labels
    c = config.tolerance_c
    n_rows = data.num_rows
    m = len(index_sets)

    def constraints(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        margins = y * (A @ x)
        hinge = np.maximum(0.0, 1.0 - margins)
        # d/dx [1 - y a'x]+ = -y a on the active side, 0 elsewhere
        slope = np.where(margins < 1.0, -y, 0.0)
        overall_value = float(np.mean(hinge))
        overall_grad = np.asarray(A.T @ slope).reshape(-1) / n_rows
        values = np.empty(m)
        jac = np.empty((m, data.dimension))
        for j, idx in enumerate(index_sets):
            values[j] = float(np.mean(hinge[idx])) - overall_value - c
            jac[j] = np.asarray(A[idx].T @ slope[idx]).reshape(-1) / idx.size - overall_grad
        return values, jac

    overall_norm = _row_norm_max(A)
    row_bounds = np.array([_row_norm_max(A[idx]) + overall_norm for idx in index_sets])
    hinge_bound = 1.0 + config.radius * np.sqrt(data.dimension) * overall_norm
    constants = ConstantEstimates(
        L_f=0.25 * _mean_squared_row_norm(A),
        L_g=0.0,
        M_g=float(np.linalg.norm(row_bounds)),
        B_g=float(np.sqrt(m)) * (hinge_bound + c),
    )
    return ProblemSpec(
        name="intersectional",
        dimension=data.dimension,
        num_constraints=m,
        objective=logistic_objective(data),
        constraints=constraints,
        regularizer=Regularizer.uniform_box(data.dimension, config.radius),
        constants=constants,
        smoothness="nonsmooth",
    )
