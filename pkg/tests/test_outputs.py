"""Tests for trace.csv and summary.json output."""

import json
from pathlib import Path
from typing import Callable, List

import pytest

from pplsolve.bench.outputs import read_trace, trace_frame, write_outputs
from pplsolve.objects.run_summary import RunSummary
from pplsolve.objects.trace_record import TraceRecord
from pplsolve.validation import OutputError

TraceFactory = Callable[..., List[TraceRecord]]

HEADER = "iter,elapsed_sec,objective,feasibility,stationarity,complementarity,dual_gap,lambda_norm,mu_norm,delta_k"


def summary() -> RunSummary:
    return RunSummary(
        config={"problem": "disk", "method": "plada"},
        problem="disk",
        method="plada",
        converged=False,
        stop_reason="budget",
        iterations=0,
        wall_time_sec=0.0,
    )


@pytest.mark.unit
class TestWriteOutputs:
    """Output files and their layout."""

    def test_header_and_row_count(self, temp_dir: Path, make_trace: TraceFactory) -> None:
        trace_path, summary_path = write_outputs(make_trace([0.5], [0.25], [0.0]), summary(), temp_dir / "run")

        lines = trace_path.read_text().splitlines()
        assert lines[0] == HEADER
        assert len(lines) == 2
        assert lines[1].startswith("0,")
        assert json.loads(summary_path.read_text())["stop_reason"] == "budget"

    def test_trace_round_trip(self, temp_dir: Path, make_trace: TraceFactory) -> None:
        trace = make_trace([1.0, 0.5, 0.125], [0.0, 0.25, 1e-7], [0.0, 0.0, 3.5])

        trace_path, _ = write_outputs(trace, summary(), temp_dir)

        loaded = read_trace(trace_path)
        assert [row.iter for row in loaded] == [0, 1, 2]
        for got, want in zip(loaded, trace):
            assert got.as_row() == pytest.approx(want.as_row(), rel=1e-15)

    def test_summary_round_trip(self, temp_dir: Path) -> None:
        _, summary_path = write_outputs([], summary(), temp_dir)

        assert RunSummary.model_validate_json(summary_path.read_text()) == summary()

    def test_frame_columns(self, make_trace: TraceFactory) -> None:
        frame = trace_frame(make_trace([1.0, 2.0], [0.0, 0.0], [0.0, 0.0]))

        assert ",".join(frame.columns) == HEADER
        assert frame["iter"].dtype == "int64"

    def test_output_dir_is_a_file(self, temp_dir: Path, make_trace: TraceFactory) -> None:
        blocker = temp_dir / "blocker"
        blocker.write_text("")

        with pytest.raises(OutputError, match="blocker"):
            write_outputs(make_trace([1.0], [0.0], [0.0]), summary(), blocker)


@pytest.mark.unit
class TestReadTrace:
    """Parsing trace files."""

    def test_bad_header(self, temp_dir: Path) -> None:
        path = temp_dir / "trace.csv"
        path.write_text("iter,objective\n0,1.0\n")

        with pytest.raises(OutputError, match="header"):
            read_trace(path)

    def test_missing_file(self, temp_dir: Path) -> None:
        with pytest.raises(OutputError):
            read_trace(temp_dir / "trace.csv")
