"""Solver parameter models and their derivation from problem constants.

The penalty parameter rho is never set directly: it follows from alpha and beta
as rho = alpha / (1 + alpha * beta). Step sizes default to 90% of the largest
value the convergence analysis allows for the given constants.
"""

from typing import Any, Dict, Literal, Optional

from pydantic import BaseModel, Field, PositiveFloat, PositiveInt

from pplsolve.logging_config import get_logger
from pplsolve.objects.constants import ConstantEstimates
from pplsolve.objects.kkt_report import KktTolerances
from pplsolve.validation import ConfigurationError, ParameterError

logger = get_logger(__name__)

# Fraction of the admissible step-size bound used by default
STEP_SAFETY = 0.9

PLADA_OVERRIDES = {"eta", "tau", "gamma0", "kappa", "max_iters", "tol", "early_stop", "x_update_mode", "lambda_cap"}
PPALA_OVERRIDES = {"eta", "tau", "p", "q", "max_iters", "tol", "early_stop", "lambda_cap"}

DEFAULT_P = 0.1


class SolverParams(BaseModel):
    """Parameters shared by both primal-dual solvers.

    Attributes:
        alpha: Perturbation weight, > 1
        beta: Proximal weight on lambda - mu, in (0, 1)
        rho: Derived penalty alpha / (1 + alpha * beta)
        eta: Primal step size
        tau: Slack step size
        max_iters: Iteration budget K
        tol: Early-stop tolerances
        early_stop: Stop once the tolerances hold (False runs the full budget)
        lambda_cap: Radius of the multiplier ball (None disables the projection)
    """

    alpha: float = Field(gt=1.0)
    beta: float = Field(gt=0.0, lt=1.0)
    rho: PositiveFloat
    eta: PositiveFloat
    tau: PositiveFloat
    max_iters: int = Field(default=50000, ge=0)
    tol: KktTolerances = KktTolerances()
    early_stop: bool = True
    lambda_cap: Optional[float] = Field(default=None, ge=0.0)


class PladaParams(SolverParams):
    """Parameters of the non-smooth-constraint solver.

    Attributes:
        gamma0: Cap on the mu-step coefficient, in (0, 1]
        kappa: Scale of the schedule delta_k = kappa / (k + 1), in (0, 1]
        x_update_mode: "linearized" prox-gradient step or injected "exact-subproblem" solver
    """

    gamma0: float = Field(default=0.1, gt=0.0, le=1.0)
    kappa: float = Field(default=1.0, gt=0.0, le=1.0)
    x_update_mode: Literal["linearized", "exact-subproblem"] = "linearized"


class PpalaParams(SolverParams):
    """Parameters of the smooth-constraint solver.

    Attributes:
        p: Scale of the schedule delta_k = 1 / (p * k**q + 1)
        q: Exponent of the schedule, in (2/3, 1]
    """

    p: PositiveFloat = DEFAULT_P
    q: float = Field(default=1.0, gt=2.0 / 3.0, le=1.0)


class PenaltySchedule(BaseModel):
    """Outer-loop schedule of the quadratic-penalty baseline.

    Attributes:
        rho0: Initial penalty weight
        growth: Factor applied to the penalty after each round (>= 1)
        inner_iters: Prox-gradient iterations per round
        outer_rounds: Number of rounds
        tol: Early-stop tolerances
    """

    rho0: PositiveFloat = 1.0
    growth: float = Field(default=10.0, ge=1.0)
    inner_iters: PositiveInt = 2000
    outer_rounds: PositiveInt = 3
    tol: KktTolerances = KktTolerances()


def derive_rho(alpha: float, beta: float) -> float:
    """rho = alpha / (1 + alpha * beta).

    Raises:
        ParameterError: If alpha <= 1 or beta is outside (0, 1)

    Example:
        >>> derive_rho(10.0, 0.1)
        5.0
    """
    if not alpha > 1.0:
        raise ParameterError(f"alpha must be > 1, got {alpha}")
    if not 0.0 < beta < 1.0:
        raise ParameterError(f"beta must lie in (0, 1), got {beta}")
    return alpha / (1.0 + alpha * beta)


def ppala_lipschitz(constants: ConstantEstimates, rho: float) -> float:
    """Gradient Lipschitz constant L_l of the augmented Lagrangian in x.

    L_l = L_f + L_g * B_lambda + rho * (L_g * B_u + L_g * B_g + M_g**2)
    """
    c = constants
    return c.L_f + c.L_g * c.B_lambda + rho * (c.L_g * c.slack_bound + c.L_g * c.B_g + c.M_g**2)


def _check_overrides(overrides: Dict[str, Any], allowed: set) -> None:
    unknown = sorted(set(overrides) - allowed)
    if unknown:
        raise ParameterError(f"unknown solver overrides: {', '.join(unknown)}")


def _primal_step(
    overrides: Dict[str, Any],
    bound_denominator: Optional[float],
    bounded_domain: bool,
    label: str,
) -> float:
    """Default or overridden eta, warning when an override breaks the bound."""
    if "eta" in overrides:
        eta = float(overrides["eta"])
        if not bounded_domain:
            logger.warning(f"{label}: eta supplied on an unbounded domain; constants are not checked for compactness")
        if bound_denominator is not None and bound_denominator > 0 and eta >= 1.0 / bound_denominator:
            logger.warning(f"{label}: eta={eta:.4g} violates the bound eta < {1.0 / bound_denominator:.4g}")
        return eta
    if bound_denominator is None:
        raise ConfigurationError(f"{label}: eta cannot be derived without problem constants")
    if not bounded_domain:
        raise ConfigurationError(f"{label}: deriving eta from constants requires a compact (box) domain")
    if bound_denominator <= 0:
        raise ConfigurationError(f"{label}: constants are all zero; supply eta explicitly")
    return STEP_SAFETY / bound_denominator


def _slack_step(overrides: Dict[str, Any], bound: float, label: str) -> float:
    if "tau" in overrides:
        tau = float(overrides["tau"])
        if tau >= bound:
            logger.warning(f"{label}: tau={tau:.4g} violates the bound tau < {bound:.4g}")
        return tau
    return STEP_SAFETY * bound


def derive_plada_params(
    alpha: float,
    beta: float,
    constants: Optional[ConstantEstimates],
    overrides: Optional[Dict[str, Any]] = None,
    bounded_domain: bool = True,
) -> PladaParams:
    """Build PLADA parameters from alpha, beta and the problem constants.

    Defaults: eta = 0.9 / (L_f + 3 rho M_g**2), tau = 0.9 / (3 rho).

    Args:
        alpha: Perturbation weight (> 1)
        beta: Proximal weight in (0, 1)
        constants: Problem constants (needed unless eta is overridden)
        overrides: Replacement values for eta, tau, gamma0, kappa, max_iters, tol,
            early_stop, x_update_mode, lambda_cap
        bounded_domain: Whether the problem domain is a compact box

    Returns:
        Validated PladaParams

    Raises:
        ParameterError: If alpha, beta or an override is out of range
        ConfigurationError: If eta must be derived but cannot be

    Example:
        >>> p = derive_plada_params(10.0, 0.1, ConstantEstimates(L_f=1.0, M_g=1.0))
        >>> (p.rho, p.eta, p.tau)
        (5.0, 0.05625, 0.06)
    """
    overrides = dict(overrides or {})
    _check_overrides(overrides, PLADA_OVERRIDES)
    rho = derive_rho(alpha, beta)

    denominator = None if constants is None else constants.L_f + 3.0 * rho * constants.M_g**2
    eta = _primal_step(overrides, denominator, bounded_domain, "plada")
    tau = _slack_step(overrides, 1.0 / (3.0 * rho), "plada")

    gamma0 = float(overrides.get("gamma0", 0.1))
    if not 0.0 < gamma0 <= 1.0:
        raise ParameterError(f"gamma0 must lie in (0, 1], got {gamma0}")
    kappa = float(overrides.get("kappa", 1.0))
    if not 0.0 < kappa <= 1.0:
        raise ParameterError(f"kappa must lie in (0, 1], got {kappa}")

    params = PladaParams(
        alpha=alpha,
        beta=beta,
        rho=rho,
        eta=eta,
        tau=tau,
        gamma0=gamma0,
        kappa=kappa,
        max_iters=overrides.get("max_iters", 50000),
        tol=overrides.get("tol", KktTolerances()),
        early_stop=overrides.get("early_stop", True),
        x_update_mode=overrides.get("x_update_mode", "linearized"),
        lambda_cap=overrides.get("lambda_cap"),
    )
    logger.info(f"plada: rho={params.rho:.6g} eta={params.eta:.6g} tau={params.tau:.6g}")
    return params


def derive_ppala_params(
    alpha: float,
    beta: float,
    constants: Optional[ConstantEstimates],
    overrides: Optional[Dict[str, Any]] = None,
    bounded_domain: bool = True,
) -> PpalaParams:
    """Build PPALA parameters from alpha, beta and the problem constants.

    Defaults: eta = 0.9 / (L_l + 3 rho M_g**2) with L_l from :func:`ppala_lipschitz`,
    tau = 0.9 / (2 rho), p = 0.1, q = 1.

    Raises:
        ParameterError: If alpha, beta, p, q or an override is out of range
        ConfigurationError: If eta must be derived but cannot be
    """
    overrides = dict(overrides or {})
    _check_overrides(overrides, PPALA_OVERRIDES)
    rho = derive_rho(alpha, beta)

    denominator = None if constants is None else ppala_lipschitz(constants, rho) + 3.0 * rho * constants.M_g**2
    eta = _primal_step(overrides, denominator, bounded_domain, "ppala")
    tau = _slack_step(overrides, 1.0 / (2.0 * rho), "ppala")

    p = float(overrides.get("p", DEFAULT_P))
    if not p > 0:
        raise ParameterError(f"p must be positive, got {p}")
    q = float(overrides.get("q", 1.0))
    if not 2.0 / 3.0 < q <= 1.0:
        raise ParameterError(f"q must lie in (2/3, 1], got {q}")

    params = PpalaParams(
        alpha=alpha,
        beta=beta,
        rho=rho,
        eta=eta,
        tau=tau,
        p=p,
        q=q,
        max_iters=overrides.get("max_iters", 50000),
        tol=overrides.get("tol", KktTolerances()),
        early_stop=overrides.get("early_stop", True),
        lambda_cap=overrides.get("lambda_cap"),
    )
    logger.info(f"ppala: rho={params.rho:.6g} eta={params.eta:.6g} tau={params.tau:.6g}")
    return params
