"""Optional dataset transforms: feature scaling and a seeded split."""

from typing import Tuple

import numpy as np
import scipy.sparse as sp

from pplsolve.objects.dataset import Dataset
from pplsolve.validation import ContractViolation


def minmax_scale(data: Dataset) -> Dataset:
    """Scale every feature column into [0, 1]; constant columns become 0.

    Sparse matrices are divided by their column max-abs instead, which keeps
    zeros at zero.
    """
    if data.is_sparse:
        max_abs = np.asarray(abs(data.features).max(axis=0).todense()).reshape(-1)
        scale = np.divide(1.0, max_abs, out=np.zeros_like(max_abs), where=max_abs > 0)
        features = sp.csr_matrix(data.features @ sp.diags(scale))
    else:
        low = data.features.min(axis=0) if data.num_rows else np.zeros(data.dimension)
        span = (data.features.max(axis=0) - low) if data.num_rows else np.zeros(data.dimension)
        scale = np.divide(1.0, span, out=np.zeros_like(span), where=span > 0)
        features = (data.features - low) * scale
    return data.model_copy(update={"features": features})


def _subset(data: Dataset, rows: np.ndarray) -> Dataset:
    position = np.full(data.num_rows, -1, dtype=np.int64)
    position[rows] = np.arange(rows.size)
    masks = {}
    for name, idx in data.group_masks.items():
        mapped = position[idx]
        masks[name] = np.sort(mapped[mapped >= 0])
    return Dataset(
        features=data.features[rows],
        labels=data.labels[rows],
        group_masks=masks,
        attributes={name: values[rows] for name, values in data.attributes.items()},
        feature_names=data.feature_names,
    )


def shuffle_split(data: Dataset, test_fraction: float, seed: int = 0) -> Tuple[Dataset, Dataset]:
    """Seeded row shuffle into (train, test); group masks are re-indexed per part.

    Raises:
        ContractViolation: If test_fraction is outside [0, 1)
    """
    if not 0.0 <= test_fraction < 1.0:
        raise ContractViolation(f"test_fraction must lie in [0, 1), got {test_fraction}")
    order = np.random.default_rng(seed).permutation(data.num_rows)
    n_test = int(round(test_fraction * data.num_rows))
    test_rows = np.sort(order[:n_test])
    train_rows = np.sort(order[n_test:])
    return _subset(data, train_rows), _subset(data, test_rows)
