"""Pytest fixtures and configuration."""

import tempfile
from pathlib import Path
from typing import Callable, Generator, List

import numpy as np
import pytest

from pplsolve.dataio.synthetic import make_synthetic_fairness_dataset
from pplsolve.objects.dataset import Dataset
from pplsolve.objects.problem_spec import ProblemSpec
from pplsolve.objects.trace_record import TraceRecord
from pplsolve.problems.qp import make_nonconvex_qp
from pplsolve.problems.toys import make_disk_problem, make_inactive_toy, make_linear_toy


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for test files."""
    with tempfile.TemporaryDirectory() as tmpdir:
        yield Path(tmpdir)


@pytest.fixture
def disk() -> ProblemSpec:
    return make_disk_problem()


@pytest.fixture
def linear_toy() -> ProblemSpec:
    return make_linear_toy()


@pytest.fixture
def inactive_toy() -> ProblemSpec:
    """Inactive-constraint toy centred at (0.5, -0.5)."""
    return make_inactive_toy(np.array([0.5, -0.5]))


@pytest.fixture
def small_qp() -> ProblemSpec:
    return make_nonconvex_qp(seed=3, n=4, m=2)


@pytest.fixture
def synthetic_dataset() -> Dataset:
    return make_synthetic_fairness_dataset(seed=0, rows=200, dim=4)


@pytest.fixture
def two_point_dataset() -> Dataset:
    """One protected row at +1, one unprotected row at -1."""
    return Dataset(
        features=np.array([[1.0], [-1.0]]),
        labels=[1.0, -1.0],
        group_masks={"group:protected": [0], "group:unprotected": [1]},
    )


@pytest.fixture
def libsvm_fixture() -> bytes:
    """100 canonical LIBSVM lines: '+1'/'-1' labels, ascending indices, no zeros."""
    lines = []
    for i in range(100):
        label = "+1" if i % 3 else "-1"
        entries = []
        for index in range(1, 9):
            if (i + index) % 4 == 0:
                continue
            value = (i * index) % 7 - 3
            if value == 0:
                continue
            text = str(value) if index % 2 else f"{value}.25"
            entries.append(f"{index}:{text}")
        lines.append(" ".join([label] + entries))
    return ("\n".join(lines) + "\n").encode("utf-8")


@pytest.fixture
def make_trace() -> Callable[..., List[TraceRecord]]:
    """Factory for synthetic traces with given per-iteration residuals."""

    def factory(
        stationarity: List[float],
        feasibility: List[float],
        complementarity: List[float],
    ) -> List[TraceRecord]:
        return [
            TraceRecord(
                iter=k,
                elapsed_sec=0.001 * k,
                objective=1.0,
                feasibility=feasibility[k],
                stationarity=stationarity[k],
                complementarity=complementarity[k],
                dual_gap=0.0,
                lambda_norm=0.0,
                mu_norm=0.0,
                delta_k=1.0 / (k + 1),
            )
            for k in range(len(stationarity))
        ]

    return factory
