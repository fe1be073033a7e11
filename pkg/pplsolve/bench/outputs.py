"""Writers for trace.csv and summary.json."""

from pathlib import Path
from typing import List, Sequence, Tuple

import pandas as pd

from pplsolve.logging_config import get_logger
from pplsolve.objects.run_summary import RunSummary
from pplsolve.objects.trace_record import TRACE_COLUMNS, TraceRecord
from pplsolve.validation import OutputError

logger = get_logger(__name__)

TRACE_FILE = "trace.csv"
SUMMARY_FILE = "summary.json"


def trace_frame(trace: Sequence[TraceRecord]) -> pd.DataFrame:
    """Trace rows as a DataFrame in the fixed column order."""
    return pd.DataFrame([record.as_row() for record in trace], columns=TRACE_COLUMNS).astype({"iter": "int64"})


def read_trace(path: Path) -> List[TraceRecord]:
    """Parse a trace.csv back into TraceRecords.

    Raises:
        OutputError: If the file cannot be read or its header differs
    """
    try:
        frame = pd.read_csv(path)
    except (OSError, pd.errors.EmptyDataError) as e:
        raise OutputError(f"cannot read trace {path}: {e}")
    if list(frame.columns) != TRACE_COLUMNS:
        raise OutputError(f"{path}: unexpected trace header {list(frame.columns)}")
    records = []
    for row in frame.to_dict(orient="records"):
        records.append(TraceRecord(**{k: (int(v) if k == "iter" else float(v)) for k, v in row.items()}))
    return records


def write_outputs(trace: Sequence[TraceRecord], summary: RunSummary, output_dir: Path) -> Tuple[Path, Path]:
    """Write trace.csv and summary.json into ``output_dir`` (created if missing).

    Returns:
        (trace path, summary path)

    Raises:
        OutputError: If a file cannot be written; the message names the path

    Example:
        >>> write_outputs(result.trace, summary, Path("runs/disk"))
        (PosixPath('runs/disk/trace.csv'), PosixPath('runs/disk/summary.json'))
    """
    output_dir = Path(output_dir)
    trace_path = output_dir / TRACE_FILE
    summary_path = output_dir / SUMMARY_FILE
    try:
        output_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputError(f"cannot create output directory {output_dir}: {e}")

    try:
        trace_frame(trace).to_csv(trace_path, index=False, lineterminator="\n")
    except OSError as e:
        raise OutputError(f"cannot write {trace_path}: {e}")
    try:
        summary_path.write_text(summary.model_dump_json(indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        raise OutputError(f"cannot write {summary_path}: {e}")

    logger.info(f"wrote {len(trace)} trace rows to {trace_path} and summary to {summary_path}")
    return trace_path, summary_path
