"""CSV dataset reader.

The first row is a header. Numeric columns become features, the label column is
mapped to +1 (``positive_label``) or -1, and columns listed as group columns are
kept verbatim as string attributes for mask extraction.
"""

import io
from typing import BinaryIO, List, Optional, Union

import numpy as np
import pandas as pd

from pplsolve.logging_config import get_logger
from pplsolve.objects.dataset import Dataset
from pplsolve.validation import ParseError

logger = get_logger(__name__)


def parse_csv(
    source: Union[bytes, BinaryIO],
    label_column: str,
    positive_label: str,
    group_columns: Optional[List[str]] = None,
) -> Dataset:
    """Parse a comma-separated UTF-8 byte stream into a Dataset.

    Args:
        source: Raw bytes or a binary file object
        label_column: Header name of the label column
        positive_label: Label value mapped to +1; every other value maps to -1
        group_columns: Columns kept as attributes instead of features

    Raises:
        ParseError: If the header or label column is missing, or a feature column
            is not numeric

    Example:
        >>> ds = parse_csv(b"a,b,y\\n1,2,yes\\n0,1,no\\n", "y", "yes")
        >>> ds.labels
        array([ 1., -1.])
    """
    stream = io.BytesIO(source) if isinstance(source, (bytes, bytearray)) else source
    try:
        frame = pd.read_csv(stream, dtype=str, keep_default_na=False, encoding="utf-8")
    except pd.errors.EmptyDataError:
        raise ParseError("no header")
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise ParseError(f"malformed CSV: {e}")

    frame.columns = [str(column).strip() for column in frame.columns]
    if label_column not in frame.columns:
        raise ParseError(f"label column {label_column!r} not found in header {list(frame.columns)}")
    group_columns = list(group_columns or [])
    for column in group_columns:
        if column not in frame.columns:
            raise ParseError(f"group column {column!r} not found in header {list(frame.columns)}")

    labels = np.where(frame[label_column].str.strip() == positive_label, 1.0, -1.0)

    feature_names = [c for c in frame.columns if c != label_column and c not in group_columns]
    features = np.empty((len(frame), len(feature_names)))
    for position, column in enumerate(feature_names):
        try:
            features[:, position] = pd.to_numeric(frame[column].str.strip(), errors="raise").to_numpy(
                dtype=np.float64
            )
        except (ValueError, TypeError):
            raise ParseError(f"column {column!r} is not numeric; list it as a group column to keep it")

    attributes = {column: frame[column].str.strip().to_numpy(dtype=str) for column in group_columns}
    logger.debug(f"parsed {len(frame)} CSV rows with {len(feature_names)} feature columns")
    return Dataset(features=features, labels=labels, attributes=attributes, feature_names=feature_names)
