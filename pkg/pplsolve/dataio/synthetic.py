"""Seeded synthetic data for the fairness problems."""

import numpy as np

from pplsolve.dataio.groups import GroupSpec, extract_group_masks
from pplsolve.logging_config import get_logger
from pplsolve.objects.dataset import Dataset

logger = get_logger(__name__)

PROTECTED_SHARE = 0.4
PLANTED_DISPARITY = 1.5
LABEL_NOISE = 1.5


def make_synthetic_fairness_dataset(seed: int = 0, rows: int = 500, dim: int = 5) -> Dataset:
    """Gaussian features with a binary protected column and planted label disparity.

    Column 0 holds the protected attribute (0/1); the remaining ``dim - 1``
    columns are standard normal. Labels follow a linear rule with Gaussian noise
    of scale ``LABEL_NOISE`` whose intercept is shifted by ``PLANTED_DISPARITY``
    for the protected rows, so an unconstrained classifier violates demographic
    parity. Masks ``group:protected``/``group:unprotected`` and their
    label-conditioned variants are attached.

    Example:
        >>> ds = make_synthetic_fairness_dataset(seed=0)
        >>> ds.num_rows, ds.dimension
        (500, 5)
    """
    rng = np.random.default_rng(seed)
    protected = (rng.uniform(size=rows) < PROTECTED_SHARE).astype(np.float64)
    # both groups must exist with both labels
    protected[:2] = 1.0
    protected[2:4] = 0.0
    numeric = rng.standard_normal((rows, max(dim - 1, 0)))
    features = np.column_stack([protected, numeric])

    weights = rng.standard_normal(numeric.shape[1])
    score = numeric @ weights + PLANTED_DISPARITY * protected - 0.5 * PLANTED_DISPARITY
    score += LABEL_NOISE * rng.standard_normal(rows)
    labels = np.where(score > 0.0, 1.0, -1.0)
    labels[[0, 2]] = 1.0
    labels[[1, 3]] = -1.0

    data = Dataset(features=features, labels=labels, feature_names=["protected"] + [f"x{i}" for i in range(1, dim)])
    logger.debug(f"synthetic fairness data: seed={seed}, {rows} rows, {int(protected.sum())} protected")
    return extract_group_masks(data, [GroupSpec(name="group", column_index=0)], label_conditioned=True)
