"""Small problems with closed-form KKT points.

They back the acceptance tests: their minimizers and multipliers are known
analytically, so solver output can be checked against an exact oracle.
"""

from typing import Tuple

import numpy as np

from pplsolve.objects.constants import ConstantEstimates
from pplsolve.objects.problem_spec import ProblemSpec
from pplsolve.objects.regularizer import Regularizer

# Analytic KKT pair of the disk problem
DISK_X_STAR = np.full(2, -1.0 / np.sqrt(2.0))
DISK_NU_STAR = 1.0 / np.sqrt(2.0)
DISK_START = np.full(2, -2.0)


def make_disk_problem() -> ProblemSpec:
    """min x1 + x2  s.t.  ||x||^2 - 1 <= 0,  x in [-2, 2]^2.

    The KKT point is x* = -(1, 1) / sqrt(2) with nu* = 1 / sqrt(2).
    Runs start at the infeasible box corner (-2, -2).
    """

    def objective(x: np.ndarray) -> Tuple[float, np.ndarray]:
        return float(x[0] + x[1]), np.ones(2)

    def constraints(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return np.array([x @ x - 1.0]), (2.0 * x).reshape(1, 2)

    return ProblemSpec(
        name="disk",
        dimension=2,
        num_constraints=1,
        objective=objective,
        constraints=constraints,
        regularizer=Regularizer.uniform_box(2, 2.0),
        # sup ||2x|| and sup |x'x - 1| over the box
        constants=ConstantEstimates(L_f=0.0, L_g=2.0, M_g=4.0 * np.sqrt(2.0), B_g=7.0),
        smoothness="smooth",
        initial_x=DISK_START,
    )


def make_linear_toy() -> ProblemSpec:
    """min x  s.t.  x <= 0,  x in [-1, 1].

    The constraint is affine, so the exact x-subproblem
    argmin <f'(x_k), x> + lam x + (x - x_k)^2 / (2 eta) over the box is a clipped step.
    """

    def objective(x: np.ndarray) -> Tuple[float, np.ndarray]:
        return float(x[0]), np.ones(1)

    def constraints(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return np.array([x[0]]), np.ones((1, 1))

    def exact_x_update(x_k: np.ndarray, grad_f: np.ndarray, lam: np.ndarray, eta: float) -> np.ndarray:
        return np.clip(x_k - eta * (grad_f + lam), -1.0, 1.0)

    return ProblemSpec(
        name="linear-toy",
        dimension=1,
        num_constraints=1,
        objective=objective,
        constraints=constraints,
        regularizer=Regularizer.uniform_box(1, 1.0),
        constants=ConstantEstimates(L_f=0.0, L_g=0.0, M_g=1.0, B_g=1.0),
        smoothness="smooth",
        exact_x_update=exact_x_update,
    )


def make_inactive_toy(center: np.ndarray) -> ProblemSpec:
    """min ||x - c||^2 / 2  s.t.  -1 <= 0,  x in [-2, 2]^n.

    The constraint never binds: the solution is x = c with a zero multiplier.
    """
    c = np.asarray(center, dtype=np.float64).reshape(-1)
    n = c.shape[0]

    def objective(x: np.ndarray) -> Tuple[float, np.ndarray]:
        diff = x - c
        return 0.5 * float(diff @ diff), diff

    def constraints(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return np.array([-1.0]), np.zeros((1, n))

    return ProblemSpec(
        name="inactive-toy",
        dimension=n,
        num_constraints=1,
        objective=objective,
        constraints=constraints,
        regularizer=Regularizer.uniform_box(n, 2.0),
        constants=ConstantEstimates(L_f=1.0, L_g=0.0, M_g=0.0, B_g=1.0),
        smoothness="smooth",
    )


def make_constant_toy(n: int = 2) -> ProblemSpec:
    """Constant objective with an always-satisfied constraint on [-1, 1]^n."""

    def objective(x: np.ndarray) -> Tuple[float, np.ndarray]:
        return 3.0, np.zeros(n)

    def constraints(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return np.array([-1.0]), np.zeros((1, n))

    return ProblemSpec(
        name="constant-toy",
        dimension=n,
        num_constraints=1,
        objective=objective,
        constraints=constraints,
        regularizer=Regularizer.uniform_box(n, 1.0),
        smoothness="smooth",
    )
