"""KKT residual report and tolerance models."""

from typing import Any

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, field_validator


class KktTolerances(BaseModel):
    """Tolerances of the three epsilon-KKT conditions.

    Attributes:
        eps_stationarity: Bound on the prox-gradient residual
        eps_feasibility: Bound on ||max(0, g(x))||
        eps_complementarity: Bound on sum_j |nu_j g_j(x)|
    """

    eps_stationarity: PositiveFloat = 1e-3
    eps_feasibility: PositiveFloat = 1e-3
    eps_complementarity: PositiveFloat = 1e-3

    @classmethod
    def uniform(cls, eps: float) -> "KktTolerances":
        return cls(eps_stationarity=eps, eps_feasibility=eps, eps_complementarity=eps)


class KktReport(BaseModel):
    """Residuals of one primal point against a certificate multiplier.

    Attributes:
        stationarity: Prox-gradient mapping residual at the reference step
        feasibility: Euclidean norm of the positive part of g(x)
        complementarity: sum_j |nu_j g_j(x)|
        dual_gap: ||lambda - mu|| of the iterate that produced x
        nu: Certificate multiplier (non-negative)
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    stationarity: float = Field(ge=0.0)
    feasibility: float = Field(ge=0.0)
    complementarity: float = Field(ge=0.0)
    dual_gap: float = Field(default=0.0, ge=0.0)
    nu: np.ndarray

    @field_validator("nu", mode="before")
    @classmethod
    def as_float_array(cls, v: Any) -> np.ndarray:
        return np.array(v, dtype=np.float64).reshape(-1)

    def satisfies(self, tol: KktTolerances) -> bool:
        """True when all three epsilon-KKT conditions hold."""
        return (
            self.stationarity <= tol.eps_stationarity
            and self.feasibility <= tol.eps_feasibility
            and self.complementarity <= tol.eps_complementarity
        )

    def worst_ratio(self, tol: KktTolerances) -> float:
        """Largest residual-to-tolerance ratio, used to rank iterates."""
        return max(
            self.stationarity / tol.eps_stationarity,
            self.feasibility / tol.eps_feasibility,
            self.complementarity / tol.eps_complementarity,
        )
