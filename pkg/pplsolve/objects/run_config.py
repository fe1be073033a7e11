"""Run configuration loaded from a flat TOML file.

Every key of the file maps onto a field of :class:`RunConfig`; unknown keys are
rejected by name. Example (``configs/disk-plada.toml``)::

    problem = "disk"
    method = "plada"
    max_iters = 50000
"""

from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

import toml
from pydantic import BaseModel, ConfigDict, Field, PositiveFloat, PositiveInt, ValidationError, model_validator

from pplsolve.dataio.groups import GroupSpec
from pplsolve.logging_config import get_logger
from pplsolve.objects.kkt_report import KktTolerances
from pplsolve.objects.solver_params import DEFAULT_P
from pplsolve.validation import ConfigurationError

logger = get_logger(__name__)

ProblemName = Literal[
    "disk",
    "qp",
    "fairness-dp",
    "fairness-eo",
    "intersectional",
    "mnpc",
    "linear-toy",
    "inactive-toy",
]
MethodName = Literal["plada", "ppala", "penalty"]

PROBLEM_SMOOTHNESS: Dict[str, Literal["smooth", "nonsmooth"]] = {
    "disk": "smooth",
    "qp": "smooth",
    "mnpc": "smooth",
    "linear-toy": "smooth",
    "inactive-toy": "smooth",
    "fairness-dp": "nonsmooth",
    "fairness-eo": "nonsmooth",
    "intersectional": "nonsmooth",
}
SMOOTH_PROBLEMS = frozenset(name for name, kind in PROBLEM_SMOOTHNESS.items() if kind == "smooth")

DEFAULT_BETA = {"plada": 0.1, "penalty": 0.1, "ppala": 0.2}

# Fixed step sizes of the linear-model experiments
LINEAR_MODEL_ETA = 0.001
LINEAR_MODEL_TAU = 0.1


class RunConfig(BaseModel):
    """One solver run: problem, method, parameters, data and outputs.

    Attributes:
        problem: Library problem name
        method: "plada", "ppala" or "penalty"
        alpha, beta: Perturbation and proximal weights (beta defaults per method)
        gamma0, kappa: PLADA mu-step cap and schedule scale
        p, q: PPALA schedule parameters
        eta, tau: Step-size overrides (derived from constants when omitted)
        step_profile: "derived" or the fixed "linear-model-fixed" steps
        x_update_mode: PLADA x-update ("linearized" or "exact-subproblem")
        lambda_cap: Optional multiplier ball radius
        max_iters: Iteration budget
        tol_stationarity, tol_feasibility, tol_complementarity: epsilon-KKT tolerances
        rho0, growth, inner_iters, outer_rounds: Penalty-baseline schedule
        init: Initial point ("default" declared by the problem, domain "center" or seeded "random")
        early_stop: Stop once the tolerances hold
        constant_samples: Sample pairs for constant estimation
        seed: Seed for data, instances and initial points
        output_dir: Directory for trace.csv and summary.json
        trace_every: Trace subsampling stride
        qp_n, qp_m: Non-convex QP size
        tolerance_c, group_attribute, eo_formulation, radius: Fairness problem settings
        intersectional_columns, intersectional_thresholds, min_fraction: Intersectional groups
        classes, per_class, thresholds, theta, mnpc_dim: mNPC settings
        inactive_center: Center of the inactive toy
        data_path, data_format, label_column, positive_label, zero_one_labels: Dataset file
        groups: Protected-attribute selections for the dataset file
        scale_features: Min-max scale the features after loading
        synthetic_rows, synthetic_dim: Size of the synthetic fairness data
    """

    model_config = ConfigDict(extra="forbid")

    problem: ProblemName
    method: MethodName

    alpha: float = Field(default=10.0, gt=1.0)
    beta: Optional[float] = Field(default=None, gt=0.0, lt=1.0)
    gamma0: float = Field(default=0.1, gt=0.0, le=1.0)
    kappa: float = Field(default=1.0, gt=0.0, le=1.0)
    p: PositiveFloat = DEFAULT_P
    q: float = Field(default=1.0, gt=2.0 / 3.0, le=1.0)
    eta: Optional[PositiveFloat] = None
    tau: Optional[PositiveFloat] = None
    step_profile: Literal["derived", "linear-model-fixed"] = "derived"
    x_update_mode: Literal["linearized", "exact-subproblem"] = "linearized"
    lambda_cap: Optional[PositiveFloat] = None
    max_iters: int = Field(default=50000, ge=0)
    tol_stationarity: PositiveFloat = 1e-3
    tol_feasibility: PositiveFloat = 1e-3
    tol_complementarity: PositiveFloat = 1e-3

    rho0: PositiveFloat = 1.0
    growth: float = Field(default=10.0, ge=1.0)
    inner_iters: PositiveInt = 2000
    outer_rounds: PositiveInt = 3

    init: Literal["default", "center", "random"] = "default"
    early_stop: bool = True
    constant_samples: PositiveInt = 10000
    seed: int = 0
    output_dir: Path = Path("runs/latest")
    trace_every: PositiveInt = 1

    qp_n: PositiveInt = 10
    qp_m: PositiveInt = 3

    tolerance_c: float = Field(default=0.05, ge=0.0)
    group_attribute: str = "group"
    eo_formulation: Literal["max-single-constraint", "two-constraints"] = "max-single-constraint"
    radius: PositiveFloat = 100.0
    intersectional_columns: List[int] = []
    intersectional_thresholds: List[Union[float, List[float]]] = []
    min_fraction: float = Field(default=0.01, ge=0.0, lt=1.0)

    classes: int = Field(default=3, ge=2)
    per_class: PositiveInt = 50
    thresholds: Optional[List[float]] = None
    theta: PositiveFloat = 1.0
    mnpc_dim: PositiveInt = 5

    inactive_center: List[float] = [0.0, 0.0]

    data_path: Optional[Path] = None
    data_format: Literal["libsvm", "csv"] = "libsvm"
    label_column: Optional[str] = None
    positive_label: str = "1"
    zero_one_labels: bool = False
    groups: List[GroupSpec] = []
    scale_features: bool = False
    synthetic_rows: PositiveInt = 500
    synthetic_dim: PositiveInt = 5

    @model_validator(mode="after")
    def validate_compatibility(self) -> "RunConfig":
        if self.method in ("ppala", "penalty") and self.problem not in SMOOTH_PROBLEMS:
            raise ValueError(
                f"method {self.method!r} requires smooth constraints, but problem {self.problem!r} is non-smooth; "
                "use method = 'plada'"
            )
        if self.data_format == "csv" and self.data_path is not None and self.label_column is None:
            raise ValueError("csv data needs label_column")
        if self.data_path is not None and self.problem not in ("fairness-dp", "fairness-eo", "intersectional"):
            raise ValueError(f"problem {self.problem!r} does not read a dataset; remove data_path")
        return self

    @property
    def effective_beta(self) -> float:
        return DEFAULT_BETA[self.method] if self.beta is None else self.beta

    def tolerances(self) -> KktTolerances:
        return KktTolerances(
            eps_stationarity=self.tol_stationarity,
            eps_feasibility=self.tol_feasibility,
            eps_complementarity=self.tol_complementarity,
        )

    def solver_overrides(self) -> Dict[str, Any]:
        """Keyword overrides for derive_plada_params / derive_ppala_params."""
        overrides: Dict[str, Any] = {
            "max_iters": self.max_iters,
            "tol": self.tolerances(),
            "early_stop": self.early_stop,
        }
        if self.step_profile == "linear-model-fixed":
            overrides.update(eta=LINEAR_MODEL_ETA, tau=LINEAR_MODEL_TAU)
        if self.eta is not None:
            overrides["eta"] = self.eta
        if self.tau is not None:
            overrides["tau"] = self.tau
        if self.lambda_cap is not None:
            overrides["lambda_cap"] = self.lambda_cap
        if self.method == "plada":
            overrides.update(gamma0=self.gamma0, kappa=self.kappa, x_update_mode=self.x_update_mode)
        elif self.method == "ppala":
            overrides.update(p=self.p, q=self.q)
        return overrides


def parse_config(values: Dict[str, Any], source: str = "config") -> RunConfig:
    """Validate a key-value mapping into a RunConfig.

    Raises:
        ConfigurationError: On unknown keys, type errors or incompatible settings
    """
    unknown = sorted(set(values) - set(RunConfig.model_fields))
    if unknown:
        raise ConfigurationError(f"{source}: unknown config key(s): {', '.join(unknown)}")
    try:
        return RunConfig(**values)
    except ValidationError as e:
        raise ConfigurationError(f"Validation failed for {source}\n{e}")


def load_config(path: Union[str, Path]) -> RunConfig:
    """Load and validate a TOML run config.

    Raises:
        ConfigurationError: If the file is missing, malformed or invalid

    Example:
        >>> load_config("configs/disk-plada.toml").effective_beta
        0.1
    """
    path = Path(path)
    try:
        values = toml.load(path)
    except FileNotFoundError:
        raise ConfigurationError(f"config file not found: {path}")
    except toml.TomlDecodeError as e:
        raise ConfigurationError(f"{path}: malformed TOML: {e}")
    logger.info(f"config: {path}")
    return parse_config(values, source=str(path))
