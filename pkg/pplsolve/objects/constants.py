"""Problem constants consumed by the step-size formulas.

The solvers need Lipschitz and bound constants for the objective and the
constraint block. They are either supplied with the problem or sampled from the
domain by :func:`pplsolve.objects.problem_spec.estimate_constants`.
"""

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator

DEFAULT_B_LAMBDA = 10.0


class ConstantEstimates(BaseModel):
    """Lipschitz and bound constants of a problem instance.

    Attributes:
        L_f: Lipschitz constant of the objective gradient
        L_g: Lipschitz constant of the constraint Jacobian (smooth constraints only)
        M_g: Bound on the norm of the constraint Jacobian or subgradient selection
        B_g: Bound on the norm of the constraint values over the domain
        B_u: Bound on the slack iterates (defaults to B_g)
        B_lambda: Bound on the multiplier iterates
        provenance: Whether the values were supplied by the problem author or sampled

    Example:
        >>> ConstantEstimates(L_f=1.0, M_g=2.0, B_g=3.0).B_u
        3.0
    """

    L_f: float = Field(default=0.0, ge=0.0)
    L_g: float = Field(default=0.0, ge=0.0)
    M_g: float = Field(default=0.0, ge=0.0)
    B_g: float = Field(default=0.0, ge=0.0)
    B_u: Optional[float] = Field(default=None, ge=0.0)
    B_lambda: float = Field(default=DEFAULT_B_LAMBDA, ge=0.0)
    provenance: Literal["user-supplied", "sampled"] = "user-supplied"

    @model_validator(mode="after")
    def default_slack_bound(self) -> "ConstantEstimates":
        """Slack iterates stay below the constraint value bound."""
        if self.B_u is None:
            self.B_u = self.B_g
        return self

    @property
    def slack_bound(self) -> float:
        return float(self.B_u if self.B_u is not None else self.B_g)
