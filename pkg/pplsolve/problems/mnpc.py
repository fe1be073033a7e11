"""Multi-class Neyman-Pearson classification with linear scorers.

Minimize the pairwise sigmoid loss of class 1 while keeping the loss of every
other class below its threshold. Class i scores a point xi with w_i'xi, and the
pairwise loss is phi(w_i'xi - w_j'xi) with phi(t) = 1 / (1 + exp(t)). The weights
are confined to the box ||x||_inf <= theta.
"""

from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.special import expit

from pplsolve.logging_config import get_logger
from pplsolve.objects.constants import ConstantEstimates
from pplsolve.objects.problem_spec import ProblemSpec
from pplsolve.objects.regularizer import Regularizer
from pplsolve.validation import ConstructionError

logger = get_logger(__name__)

# sup |phi'| and sup |phi''| of the sigmoid loss
PHI_SLOPE_BOUND = 0.25
PHI_CURVATURE_BOUND = 0.0963


def make_gaussian_classes(
    seed: int, classes: int, per_class: int, dim: int, separation: float = 2.0
) -> Sequence[np.ndarray]:
    """Per-class samples from N(m_c, I) with seeded means of scale ``separation``."""
    rng = np.random.default_rng(seed)
    means = separation * rng.standard_normal((classes, dim))
    return [means[c] + rng.standard_normal((per_class, dim)) for c in range(classes)]


def _class_loss(samples: Sequence[np.ndarray], i: int, W: np.ndarray) -> Tuple[float, np.ndarray]:
    """Average pairwise loss of class i and its gradient with respect to W."""
    data = samples[i]
    scores = data @ W.T
    grad = np.zeros_like(W)
    value = 0.0
    for j in range(W.shape[0]):
        if j == i:
            continue
        margin = scores[:, i] - scores[:, j]
        phi = expit(-margin)
        value += float(np.mean(phi))
        slope = -phi * (1.0 - phi) / data.shape[0]
        step = data.T @ slope
        grad[i] += step
        grad[j] -= step
    return value, grad


def make_mnpc_linear(
    seed: int = 0,
    classes: int = 3,
    per_class: int = 50,
    kappa: Optional[Sequence[float]] = None,
    theta: float = 1.0,
    dim: int = 5,
) -> ProblemSpec:
    """Build the mNPC problem on seeded Gaussian class data.

    Args:
        seed: Seed of the synthetic data
        classes: Number of classes (>= 2)
        per_class: Samples per class
        kappa: Loss thresholds of classes 2..classes (default: all 1.0)
        theta: Half-width of the weight box
        dim: Feature dimension

    Raises:
        ConstructionError: If classes < 2 or kappa has the wrong length

    Example:
        >>> problem = make_mnpc_linear(classes=4, kappa=[1.0, 1.0, 1.0])
        >>> evaluate_constraints(problem, np.zeros(problem.dimension))[0]
        array([0.5, 0.5, 0.5])
    """
    if classes < 2:
        raise ConstructionError(f"mnpc needs at least 2 classes, got {classes}")
    thresholds = np.ones(classes - 1) if kappa is None else np.asarray(kappa, dtype=np.float64).reshape(-1)
    if thresholds.shape[0] != classes - 1:
        raise ConstructionError(f"kappa must have {classes - 1} entries, got {thresholds.shape[0]}")

    samples = make_gaussian_classes(seed, classes, per_class, dim)
    shape = (classes, dim)

    def objective(x: np.ndarray) -> Tuple[float, np.ndarray]:
        value, grad = _class_loss(samples, 0, x.reshape(shape))
        return value, grad.reshape(-1)

    def constraints(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        W = x.reshape(shape)
        values = np.empty(classes - 1)
        jac = np.empty((classes - 1, classes * dim))
        for i in range(1, classes):
            value, grad = _class_loss(samples, i, W)
            values[i - 1] = value - thresholds[i - 1]
            jac[i - 1] = grad.reshape(-1)
        return values, jac

    # Each pairwise term has direction (e_i - e_j) (x) xi of norm sqrt(2) ||xi||
    radii = np.array([np.max(np.linalg.norm(s, axis=1)) for s in samples])
    pairs = classes - 1
    curvature = PHI_CURVATURE_BOUND * 2.0 * pairs * radii**2
    slopes = PHI_SLOPE_BOUND * np.sqrt(2.0) * pairs * radii
    constants = ConstantEstimates(
        L_f=float(curvature[0]),
        L_g=float(np.linalg.norm(curvature[1:])),
        M_g=float(np.linalg.norm(slopes[1:])),
        B_g=float(np.linalg.norm(np.maximum(thresholds, pairs - thresholds))),
    )
    logger.debug(f"mnpc(seed={seed}, classes={classes}): L_f={constants.L_f:.4g} M_g={constants.M_g:.4g}")
    return ProblemSpec(
        name="mnpc",
        dimension=classes * dim,
        num_constraints=classes - 1,
        objective=objective,
        constraints=constraints,
        regularizer=Regularizer.uniform_box(classes * dim, theta),
        constants=constants,
        smoothness="smooth",
    )
