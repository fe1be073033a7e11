"""Load a dataset file named in a run config."""

from pathlib import Path
from typing import List, Optional

from pplsolve.dataio.csv_reader import parse_csv
from pplsolve.dataio.groups import GroupSpec, extract_group_masks
from pplsolve.dataio.libsvm import parse_libsvm
from pplsolve.dataio.transforms import minmax_scale
from pplsolve.logging_config import get_logger
from pplsolve.objects.dataset import Dataset
from pplsolve.validation import ConfigurationError, ParseError

logger = get_logger(__name__)


def load_dataset(
    path: Path,
    data_format: str = "libsvm",
    label_column: Optional[str] = None,
    positive_label: str = "1",
    zero_one_labels: bool = False,
    groups: Optional[List[GroupSpec]] = None,
    label_conditioned: bool = False,
    scale_features: bool = False,
) -> Dataset:
    """Read, parse and mask a dataset file.

    Attribute columns referenced by csv-column groups are kept out of the features.

    Raises:
        ConfigurationError: If the file cannot be read
        ParseError: If the content is malformed (the message names the file)
        ConstructionError: If a group mask comes out empty
    """
    groups = list(groups or [])
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise ConfigurationError(f"cannot read dataset {path}: {e}")

    try:
        if data_format == "csv":
            if label_column is None:
                raise ConfigurationError("csv data needs label_column")
            attribute_columns = [g.column_name for g in groups if g.source == "csv-column" and g.column_name]
            data = parse_csv(raw, label_column, positive_label, group_columns=attribute_columns)
        else:
            data = parse_libsvm(raw, zero_one_labels=zero_one_labels)
    except ParseError as e:
        logger.error(f"{path}: {e}")
        wrapped = ParseError(f"{path}: {e}")
        wrapped.line = e.line
        raise wrapped

    if scale_features:
        data = minmax_scale(data)
    if groups:
        data = extract_group_masks(data, groups, label_conditioned=label_conditioned)
    logger.info(f"loaded {path}: {data.num_rows} rows, {data.dimension} features, {len(data.group_masks)} masks")
    return data
