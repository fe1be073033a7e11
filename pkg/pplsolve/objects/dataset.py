"""Labelled dataset with named row groups."""

from typing import Any, Dict, List, Optional, Union

import numpy as np
import scipy.sparse as sp
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from pplsolve.validation import ConstructionError

FeatureMatrix = Union[np.ndarray, sp.csr_matrix]


class Dataset(BaseModel):
    """Feature matrix, +/-1 labels and named index sets over the rows.

    Attributes:
        features: Dense array or CSR matrix of shape (N, d)
        labels: Vector of length N with entries in {-1, +1}
        group_masks: Mask name -> sorted row indices
        attributes: Non-numeric CSV columns kept for group extraction (column -> values)
        feature_names: Column names of the features, when known

    Example:
        >>> ds = Dataset(features=np.eye(2), labels=[1, -1])
        >>> ds.num_rows, ds.dimension
        (2, 2)
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    features: Any
    labels: np.ndarray
    group_masks: Dict[str, np.ndarray] = {}
    attributes: Dict[str, np.ndarray] = {}
    feature_names: Optional[List[str]] = None

    @field_validator("features", mode="before")
    @classmethod
    def as_feature_matrix(cls, v: Any) -> FeatureMatrix:
        if sp.issparse(v):
            return sp.csr_matrix(v, dtype=np.float64)
        arr = np.array(v, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError(f"features must be 2-D, got shape {arr.shape}")
        return arr

    @field_validator("labels", mode="before")
    @classmethod
    def as_label_vector(cls, v: Any) -> np.ndarray:
        arr = np.array(v, dtype=np.float64).reshape(-1)
        if not np.all(np.isin(arr, (-1.0, 1.0))):
            raise ValueError("labels must be -1 or +1")
        return arr

    @field_validator("group_masks", mode="before")
    @classmethod
    def as_index_sets(cls, v: Any) -> Dict[str, np.ndarray]:
        return {name: np.unique(np.asarray(idx, dtype=np.int64)) for name, idx in dict(v).items()}

    @model_validator(mode="after")
    def validate_rows(self) -> "Dataset":
        n = self.features.shape[0]
        if self.labels.shape[0] != n:
            raise ValueError(f"{self.labels.shape[0]} labels for {n} feature rows")
        for name, idx in self.group_masks.items():
            if idx.size and (idx.min() < 0 or idx.max() >= n):
                raise ValueError(f"mask {name!r} references rows outside [0, {n})")
        for name, values in self.attributes.items():
            if values.shape[0] != n:
                raise ValueError(f"attribute {name!r} has {values.shape[0]} values for {n} rows")
        return self

    @property
    def num_rows(self) -> int:
        return int(self.features.shape[0])

    @property
    def dimension(self) -> int:
        return int(self.features.shape[1])

    @property
    def is_sparse(self) -> bool:
        return bool(sp.issparse(self.features))

    def mask(self, name: str) -> np.ndarray:
        """Row indices of mask ``name``.

        Raises:
            ConstructionError: If the mask is missing or empty
        """
        if name not in self.group_masks:
            raise ConstructionError(f"dataset has no group mask {name!r}")
        idx = self.group_masks[name]
        if idx.size == 0:
            raise ConstructionError(f"group mask {name!r} is empty")
        return idx

    def with_masks(self, masks: Dict[str, np.ndarray]) -> "Dataset":
        merged = dict(self.group_masks)
        merged.update(masks)
        return Dataset(
            features=self.features,
            labels=self.labels,
            group_masks=merged,
            attributes=self.attributes,
            feature_names=self.feature_names,
        )

    def rows(self, index: np.ndarray) -> FeatureMatrix:
        return self.features[index]
