"""Proximable regularizers.

Three regularizers cover every problem in the library: the zero function, the
indicator of a coordinate box and a weighted L1 norm. Each one has an exact
proximal map.
"""

from typing import Any, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from pplsolve.validation import ContractViolation, DomainError, validate_positive

# Tolerance when testing box membership of solver iterates
DOMAIN_ATOL = 1e-12


class Regularizer(BaseModel):
    """Descriptor of the proximable term r(x).

    Attributes:
        kind: "zero", "box" (indicator of [lower, upper]) or "l1" (weight * ||x||_1)
        lower: Per-coordinate lower bounds (box only)
        upper: Per-coordinate upper bounds (box only)
        weight: L1 weight (l1 only)

    Example:
        >>> box = Regularizer.box([-1.0, -1.0], [1.0, 1.0])
        >>> box.prox(np.array([3.0, -0.2]), 0.5)
        array([ 1. , -0.2])
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kind: Literal["zero", "box", "l1"] = "zero"
    lower: Optional[np.ndarray] = None
    upper: Optional[np.ndarray] = None
    weight: float = 0.0

    @field_validator("lower", "upper", mode="before")
    @classmethod
    def as_float_array(cls, v: Any) -> Optional[np.ndarray]:
        if v is None:
            return None
        arr = np.array(v, dtype=np.float64).reshape(-1)
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def validate_kind(self) -> "Regularizer":
        """Box bounds must be finite and ordered; L1 weight must be non-negative."""
        if self.kind == "box":
            if self.lower is None or self.upper is None:
                raise ValueError("box regularizer requires lower and upper bounds")
            if self.lower.shape != self.upper.shape:
                raise ValueError(f"bound shapes differ: {self.lower.shape} vs {self.upper.shape}")
            if not (np.all(np.isfinite(self.lower)) and np.all(np.isfinite(self.upper))):
                raise ValueError("box bounds must be finite (compact domain)")
            if np.any(self.lower > self.upper):
                raise ValueError("box bounds must satisfy lower <= upper coordinate-wise")
        if self.kind == "l1" and self.weight < 0:
            raise ValueError(f"l1 weight must be non-negative, got {self.weight}")
        return self

    @classmethod
    def zero(cls) -> "Regularizer":
        return cls(kind="zero")

    @classmethod
    def box(cls, lower: Any, upper: Any) -> "Regularizer":
        return cls(kind="box", lower=lower, upper=upper)

    @classmethod
    def uniform_box(cls, n: int, radius: float) -> "Regularizer":
        """Box [-radius, radius]^n."""
        return cls(kind="box", lower=np.full(n, -radius), upper=np.full(n, radius))

    @classmethod
    def l1(cls, weight: float) -> "Regularizer":
        return cls(kind="l1", weight=weight)

    @property
    def is_bounded(self) -> bool:
        return self.kind == "box"

    def diameter(self) -> float:
        """Euclidean diameter of the domain (inf when unbounded)."""
        if self.kind != "box":
            return float("inf")
        assert self.lower is not None and self.upper is not None
        return float(np.linalg.norm(self.upper - self.lower))

    def center(self, n: int) -> np.ndarray:
        """Center of the domain box, or the origin when unbounded."""
        if self.kind == "box":
            assert self.lower is not None and self.upper is not None
            return 0.5 * (self.lower + self.upper)
        return np.zeros(n)

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        """Uniform draws from the domain box, shape (size, n)."""
        if self.kind != "box":
            raise DomainError("cannot sample from an unbounded domain")
        assert self.lower is not None and self.upper is not None
        return rng.uniform(self.lower, self.upper, size=(size, self.lower.shape[0]))

    def contains(self, x: np.ndarray, atol: float = DOMAIN_ATOL) -> bool:
        if self.kind != "box":
            return True
        assert self.lower is not None and self.upper is not None
        return bool(np.all(x >= self.lower - atol) and np.all(x <= self.upper + atol))

    def value(self, x: np.ndarray) -> float:
        """Evaluate r(x); the box indicator is 0 inside and an error outside."""
        if self.kind == "box":
            if not self.contains(x):
                raise DomainError("point lies outside the box domain")
            return 0.0
        if self.kind == "l1":
            return float(self.weight * np.sum(np.abs(x)))
        return 0.0

    def prox(self, y: np.ndarray, step: float) -> np.ndarray:
        """Exact proximal map prox_{step * r}(y)."""
        validate_positive(step, "prox step")
        if self.kind == "box":
            assert self.lower is not None and self.upper is not None
            if y.shape != self.lower.shape:
                raise ContractViolation(f"prox input must have shape {self.lower.shape}, got {y.shape}")
            return np.clip(y, self.lower, self.upper)
        if self.kind == "l1":
            threshold = step * self.weight
            return np.sign(y) * np.maximum(np.abs(y) - threshold, 0.0)
        return np.array(y, dtype=np.float64, copy=True)
