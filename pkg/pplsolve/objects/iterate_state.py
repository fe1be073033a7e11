"""Primal-dual iterate of the single-loop solvers."""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, NonNegativeInt, field_validator


class IterateState(BaseModel):
    """The tuple (x, u, z, lambda, mu) plus the iteration counter.

    Attributes:
        x: Primal variable, length n
        u: Slack variable, length m, coordinate-wise non-negative
        z: Perturbation variable, length m
        lam: Multiplier lambda, length m
        mu: Auxiliary multiplier, length m
        k: Number of completed iterations
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    x: np.ndarray
    u: np.ndarray
    z: np.ndarray
    lam: np.ndarray
    mu: np.ndarray
    k: NonNegativeInt = 0

    @field_validator("x", "u", "z", "lam", "mu", mode="before")
    @classmethod
    def as_float_array(cls, v: Any) -> np.ndarray:
        return np.array(v, dtype=np.float64).reshape(-1)

    @property
    def dual_gap(self) -> float:
        return float(np.linalg.norm(self.lam - self.mu))

    def is_finite(self) -> bool:
        return bool(
            np.all(np.isfinite(self.x))
            and np.all(np.isfinite(self.u))
            and np.all(np.isfinite(self.z))
            and np.all(np.isfinite(self.lam))
            and np.all(np.isfinite(self.mu))
        )
