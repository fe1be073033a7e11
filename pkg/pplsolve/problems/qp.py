"""Seeded family of non-convex quadratically constrained quadratic programs."""

from typing import Tuple

import numpy as np

from pplsolve.logging_config import get_logger
from pplsolve.objects.constants import ConstantEstimates
from pplsolve.objects.problem_spec import ProblemSpec
from pplsolve.objects.regularizer import Regularizer
from pplsolve.validation import ConstructionError

logger = get_logger(__name__)

MAX_DIMENSION = 50
MAX_CONSTRAINTS = 10
CONSTRAINT_OFFSET = -0.5


def _indefinite_symmetric(rng: np.random.Generator, n: int) -> np.ndarray:
    """Random symmetric matrix with eigenvalues in [-1, 1], at least one of each sign when n >= 2."""
    basis, _ = np.linalg.qr(rng.standard_normal((n, n)))
    eigenvalues = rng.uniform(-1.0, 1.0, size=n)
    if n >= 2:
        eigenvalues[0] = -abs(eigenvalues[0])
        eigenvalues[-1] = abs(eigenvalues[-1])
    matrix = (basis * eigenvalues) @ basis.T
    return 0.5 * (matrix + matrix.T)


def make_nonconvex_qp(seed: int = 0, n: int = 10, m: int = 3) -> ProblemSpec:
    """f(x) = x'Qx / 2 + c'x,  g_j(x) = x'A_j x / 2 + b_j'x - 0.5,  x in [-1, 1]^n.

    Q and every A_j are indefinite, so both objective and constraints are
    non-convex. g_j(0) = -0.5 makes the origin strictly feasible.

    Raises:
        ConstructionError: If n > 50 or m > 10
    """
    if not 1 <= n <= MAX_DIMENSION:
        raise ConstructionError(f"qp dimension must lie in [1, {MAX_DIMENSION}], got {n}")
    if not 1 <= m <= MAX_CONSTRAINTS:
        raise ConstructionError(f"qp constraint count must lie in [1, {MAX_CONSTRAINTS}], got {m}")

    rng = np.random.default_rng(seed)
    Q = _indefinite_symmetric(rng, n)
    c = rng.standard_normal(n)
    A = np.stack([_indefinite_symmetric(rng, n) for _ in range(m)])
    B = rng.standard_normal((m, n)) / np.sqrt(n)
    d = np.full(m, CONSTRAINT_OFFSET)

    def objective(x: np.ndarray) -> Tuple[float, np.ndarray]:
        Qx = Q @ x
        return float(0.5 * x @ Qx + c @ x), Qx + c

    def constraints(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        Ax = A @ x
        return 0.5 * Ax @ x + B @ x + d, Ax + B

    radius = np.sqrt(n)
    a_norms = np.array([np.linalg.norm(a, 2) for a in A])
    b_norms = np.linalg.norm(B, axis=1)
    constants = ConstantEstimates(
        L_f=float(np.linalg.norm(Q, 2)),
        L_g=float(np.sqrt(np.sum(a_norms**2))),
        M_g=float(np.sqrt(np.sum((a_norms * radius + b_norms) ** 2))),
        B_g=float(np.sqrt(np.sum((0.5 * a_norms * radius**2 + b_norms * radius + abs(CONSTRAINT_OFFSET)) ** 2))),
    )
    logger.debug(f"qp(seed={seed}, n={n}, m={m}): L_f={constants.L_f:.4g} M_g={constants.M_g:.4g}")
    return ProblemSpec(
        name="qp",
        dimension=n,
        num_constraints=m,
        objective=objective,
        constraints=constraints,
        regularizer=Regularizer.uniform_box(n, 1.0),
        constants=constants,
        smoothness="smooth",
    )
