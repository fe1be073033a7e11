"""LIBSVM text format reader and writer.

Each line reads ``label idx:val idx:val ...`` with 1-based, strictly ascending
indices. Missing entries are zero. Blank lines and ``#`` comments are ignored.
Matrices up to 4096 columns are materialized densely, wider ones as CSR.
"""

import io
import math
from typing import BinaryIO, List, Optional, Union

import numpy as np
import scipy.sparse as sp

from pplsolve.logging_config import get_logger
from pplsolve.objects.dataset import Dataset
from pplsolve.validation import ParseError

logger = get_logger(__name__)

DENSE_COLUMN_LIMIT = 4096


def _parse_label(token: str, zero_one_labels: bool, line_no: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"invalid label {token!r}", line_no)
    if value == 1.0:
        return 1.0
    if value == -1.0:
        return -1.0
    if value == 0.0 and zero_one_labels:
        return -1.0
    allowed = "+1, -1, 0" if zero_one_labels else "+1, -1"
    raise ParseError(f"label {token!r} is not one of {allowed}", line_no)


def parse_libsvm(
    source: Union[bytes, BinaryIO],
    zero_one_labels: bool = False,
    dimension: Optional[int] = None,
) -> Dataset:
    """Parse a LIBSVM byte stream into a Dataset.

    Args:
        source: Raw bytes or a binary file object
        zero_one_labels: Accept 0 as the negative label
        dimension: Number of columns (default: largest index seen)

    Returns:
        Dataset with dense features when d <= 4096, CSR otherwise

    Raises:
        ParseError: On malformed tokens, non-ascending indices or invalid labels,
            carrying the 1-based line number

    Example:
        >>> parse_libsvm(b"+1 1:0.5 3:1\\n").features
        array([[0.5, 0. , 1. ]])
    """
    stream = io.BytesIO(source) if isinstance(source, (bytes, bytearray)) else source
    labels: List[float] = []
    rows: List[int] = []
    cols: List[int] = []
    vals: List[float] = []
    max_index = 0

    for line_no, raw in enumerate(stream, start=1):
        try:
            line = raw.decode("utf-8")
        except UnicodeDecodeError:
            raise ParseError("line is not valid UTF-8", line_no)
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        row = len(labels)
        labels.append(_parse_label(tokens[0], zero_one_labels, line_no))
        previous = 0
        for token in tokens[1:]:
            index_text, sep, value_text = token.partition(":")
            if not sep:
                raise ParseError(f"expected idx:val, got {token!r}", line_no)
            try:
                index = int(index_text)
                value = float(value_text)
            except ValueError:
                raise ParseError(f"non-numeric entry {token!r}", line_no)
            if not math.isfinite(value):
                raise ParseError(f"non-finite value in {token!r}", line_no)
            if index <= previous:
                raise ParseError(f"index {index} does not follow {previous} in ascending order", line_no)
            previous = index
            rows.append(row)
            cols.append(index - 1)
            vals.append(value)
        max_index = max(max_index, previous)

    d = max_index if dimension is None else dimension
    if d < max_index:
        raise ParseError(f"index {max_index} exceeds the declared dimension {d}")
    matrix = sp.csr_matrix((vals, (rows, cols)), shape=(len(labels), d), dtype=np.float64)
    features = matrix.toarray() if d <= DENSE_COLUMN_LIMIT else matrix
    logger.debug(f"parsed {len(labels)} LIBSVM rows with {d} columns")
    return Dataset(features=features, labels=np.array(labels))


def format_value(value: float) -> str:
    """Integral values without a decimal point, others as the shortest round-trip repr."""
    if float(value).is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(float(value))


def serialize_libsvm(dataset: Dataset) -> bytes:
    """Canonical LIBSVM text: labels "+1"/"-1", ascending indices, zeros omitted.

    When the last column holds no non-zero value, the first row ends with an
    explicit ``d:0`` so that parsing the output without a declared dimension
    keeps all d columns.
    """
    matrix = sp.csr_matrix(dataset.features)
    matrix.sort_indices()
    d = dataset.dimension
    last_column_empty = d > 0 and not np.any(matrix.getcol(d - 1).toarray())
    lines = []
    for i in range(dataset.num_rows):
        start, end = matrix.indptr[i], matrix.indptr[i + 1]
        parts = ["+1" if dataset.labels[i] > 0 else "-1"]
        for col, value in zip(matrix.indices[start:end], matrix.data[start:end]):
            if value != 0.0:
                parts.append(f"{col + 1}:{format_value(value)}")
        if i == 0 and last_column_empty:
            parts.append(f"{d}:0")
        lines.append(" ".join(parts))
    return ("\n".join(lines) + "\n").encode("utf-8") if lines else b""
