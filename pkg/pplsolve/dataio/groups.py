"""Protected-group masks for the fairness problems.

A binary attribute produces ``<name>:protected`` and ``<name>:unprotected``.
With label conditioning the four intersections with the labels are added as
``<name>:protected:pos``, ``<name>:unprotected:pos``, ``<name>:protected:neg``
and ``<name>:unprotected:neg``.
"""

import itertools
from typing import Dict, List, Literal, Optional, Sequence, Union

import numpy as np
from pydantic import BaseModel, model_validator

from pplsolve.logging_config import get_logger
from pplsolve.objects.dataset import Dataset
from pplsolve.validation import ConstructionError

logger = get_logger(__name__)


class GroupSpec(BaseModel):
    """How to select the protected rows of one attribute.

    Attributes:
        name: Mask prefix, e.g. "group" or "race"
        source: "feature-column" (numeric column above a threshold) or
            "csv-column" (string attribute in a value set)
        column_index: 0-based feature column for "feature-column"
        threshold: Rows with feature > threshold are protected
        column_name: Feature name or CSV attribute column
        values: Attribute values counted as protected for "csv-column"

    Example:
        >>> GroupSpec(name="race", source="csv-column", column_name="race", values=["African-American"])
    """

    name: str
    source: Literal["feature-column", "csv-column"] = "feature-column"
    column_index: Optional[int] = None
    threshold: float = 0.5
    column_name: Optional[str] = None
    values: List[str] = []

    @model_validator(mode="after")
    def validate_source(self) -> "GroupSpec":
        if self.source == "feature-column" and self.column_index is None and self.column_name is None:
            raise ValueError("feature-column groups need column_index or column_name")
        if self.source == "csv-column":
            if self.column_name is None:
                raise ValueError("csv-column groups need column_name")
            if not self.values:
                raise ValueError("csv-column groups need a non-empty values list")
        if self.column_index is not None and self.column_index < 0:
            raise ValueError(f"column_index must be >= 0, got {self.column_index}")
        return self


def _feature_column(data: Dataset, spec: GroupSpec) -> np.ndarray:
    index = spec.column_index
    if index is None:
        names = data.feature_names or []
        if spec.column_name not in names:
            raise ConstructionError(f"group {spec.name!r}: feature column {spec.column_name!r} not found")
        index = names.index(spec.column_name)
    if index >= data.dimension:
        raise ConstructionError(f"group {spec.name!r}: column {index} outside {data.dimension} feature columns")
    column = data.features[:, index]
    if data.is_sparse:
        column = column.toarray()
    return np.asarray(column, dtype=np.float64).reshape(-1)


def protected_indicator(data: Dataset, spec: GroupSpec) -> np.ndarray:
    """Boolean vector marking the protected rows of ``spec``."""
    if spec.source == "feature-column":
        return _feature_column(data, spec) > spec.threshold
    if spec.column_name not in data.attributes:
        raise ConstructionError(f"group {spec.name!r}: attribute column {spec.column_name!r} not found")
    return np.isin(data.attributes[spec.column_name], spec.values)


def _checked(name: str, selector: np.ndarray) -> np.ndarray:
    idx = np.flatnonzero(selector)
    if idx.size == 0:
        raise ConstructionError(f"group mask {name!r} is empty")
    return idx


def extract_group_masks(data: Dataset, specs: Sequence[GroupSpec], label_conditioned: bool = False) -> Dataset:
    """Return ``data`` augmented with the masks of every spec.

    Args:
        data: Source dataset
        specs: Attribute selections
        label_conditioned: Also add the four label intersections (equalized odds)

    Raises:
        ConstructionError: If a referenced column is missing or a mask comes out empty

    Example:
        >>> ds = extract_group_masks(ds, [GroupSpec(name="group", column_index=0)])
        >>> sorted(ds.group_masks)
        ['group:protected', 'group:unprotected']
    """
    masks: Dict[str, np.ndarray] = {}
    positive = data.labels > 0
    for spec in specs:
        protected = protected_indicator(data, spec)
        selectors = {
            f"{spec.name}:protected": protected,
            f"{spec.name}:unprotected": ~protected,
        }
        if label_conditioned:
            selectors.update(
                {
                    f"{spec.name}:protected:pos": protected & positive,
                    f"{spec.name}:unprotected:pos": ~protected & positive,
                    f"{spec.name}:protected:neg": protected & ~positive,
                    f"{spec.name}:unprotected:neg": ~protected & ~positive,
                }
            )
        for name, selector in selectors.items():
            masks[name] = _checked(name, selector)
        logger.debug(
            f"group {spec.name!r}: {masks[f'{spec.name}:protected'].size} protected of {data.num_rows} rows"
        )
    return data.with_masks(masks)


def intersectional_groups(
    data: Dataset,
    columns: Sequence[int],
    thresholds: Union[Sequence[float], Sequence[Sequence[float]]],
    min_fraction: float = 0.01,
) -> Dict[str, np.ndarray]:
    """Threshold cells over several feature columns.

    Every combination (t_1, ..., t_K) of per-column thresholds defines the group
    of rows with feature[c_k] > t_k for all k. Groups holding no more than
    ``min_fraction`` of the rows are dropped.

    Args:
        data: Source dataset
        columns: Feature columns c_1..c_K
        thresholds: One threshold list shared by all columns, or one list per column
        min_fraction: Minimum share of rows a kept group must exceed

    Returns:
        Group name -> row indices, in the order of the threshold product

    Raises:
        ConstructionError: If a column is out of range or no group survives
    """
    if len(thresholds) > 0 and np.ndim(thresholds[0]) == 0:
        per_column = [list(thresholds)] * len(columns)
    else:
        per_column = [list(t) for t in thresholds]
    if len(per_column) != len(columns):
        raise ConstructionError(f"{len(per_column)} threshold lists for {len(columns)} columns")

    values = []
    for column in columns:
        values.append(_feature_column(data, GroupSpec(name=f"col{column}", column_index=column)))

    groups: Dict[str, np.ndarray] = {}
    for cell in itertools.product(*per_column):
        selector = np.ones(data.num_rows, dtype=bool)
        for column_values, threshold in zip(values, cell):
            selector &= column_values > threshold
        idx = np.flatnonzero(selector)
        if idx.size > min_fraction * data.num_rows:
            name = "cell:" + ",".join(f"{c}>{t:g}" for c, t in zip(columns, cell))
            groups[name] = idx
    if not groups:
        raise ConstructionError(f"no intersectional group holds more than {min_fraction:.2%} of the rows")
    logger.info(f"kept {len(groups)} intersectional groups over columns {list(columns)}")
    return groups
