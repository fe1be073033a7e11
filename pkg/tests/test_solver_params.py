"""Tests for solver parameter derivation."""

from unittest.mock import patch

import pytest
from pydantic import ValidationError

from pplsolve.objects.constants import ConstantEstimates
from pplsolve.objects.kkt_report import KktTolerances
from pplsolve.objects.solver_params import (
    PladaParams,
    derive_plada_params,
    derive_ppala_params,
    derive_rho,
    ppala_lipschitz,
)
from pplsolve.validation import ConfigurationError, ParameterError

UNIT_CONSTANTS = ConstantEstimates(L_f=1.0, M_g=1.0)


@pytest.mark.unit
class TestDeriveRho:
    """rho = alpha / (1 + alpha * beta)."""

    def test_default_pair(self) -> None:
        assert derive_rho(10.0, 0.1) == pytest.approx(5.0)

    def test_ppala_pair(self) -> None:
        assert derive_rho(10.0, 0.2) == pytest.approx(10.0 / 3.0)

    @pytest.mark.parametrize("alpha,beta", [(1.0, 0.1), (0.5, 0.1), (10.0, 0.0), (10.0, 1.0)])
    def test_out_of_range(self, alpha: float, beta: float) -> None:
        with pytest.raises(ParameterError):
            derive_rho(alpha, beta)


@pytest.mark.unit
class TestDerivePladaParams:
    """Default and overridden PLADA parameters."""

    def test_default_steps(self) -> None:
        params = derive_plada_params(10.0, 0.1, UNIT_CONSTANTS)

        assert params.rho == pytest.approx(5.0)
        assert params.eta == pytest.approx(0.9 / 16.0)
        assert params.tau == pytest.approx(0.06)
        assert params.gamma0 == 0.1
        assert params.kappa == 1.0
        assert params.x_update_mode == "linearized"

    def test_overrides_applied(self) -> None:
        params = derive_plada_params(
            10.0,
            0.1,
            UNIT_CONSTANTS,
            {"eta": 0.01, "tau": 0.02, "gamma0": 0.5, "max_iters": 7, "tol": KktTolerances.uniform(1e-4)},
        )

        assert (params.eta, params.tau, params.gamma0, params.max_iters) == (0.01, 0.02, 0.5, 7)
        assert params.tol.eps_feasibility == 1e-4

    def test_bound_violating_eta_warns(self) -> None:
        with patch("pplsolve.objects.solver_params.logger") as mock_logger:
            params = derive_plada_params(10.0, 0.1, UNIT_CONSTANTS, {"eta": 1.0})

        assert params.eta == 1.0
        mock_logger.warning.assert_called_once()
        assert "violates" in mock_logger.warning.call_args[0][0]

    def test_bound_violating_tau_warns(self) -> None:
        with patch("pplsolve.objects.solver_params.logger") as mock_logger:
            derive_plada_params(10.0, 0.1, UNIT_CONSTANTS, {"tau": 1.0})

        mock_logger.warning.assert_called_once()

    def test_unknown_override(self) -> None:
        with pytest.raises(ParameterError, match="p"):
            derive_plada_params(10.0, 0.1, UNIT_CONSTANTS, {"p": 2.0})

    def test_gamma0_out_of_range(self) -> None:
        with pytest.raises(ParameterError):
            derive_plada_params(10.0, 0.1, UNIT_CONSTANTS, {"gamma0": 1.5})

    def test_missing_constants(self) -> None:
        with pytest.raises(ConfigurationError):
            derive_plada_params(10.0, 0.1, None)

    def test_unbounded_domain_needs_explicit_eta(self) -> None:
        with pytest.raises(ConfigurationError, match="compact"):
            derive_plada_params(10.0, 0.1, UNIT_CONSTANTS, bounded_domain=False)

    def test_unbounded_domain_with_eta_warns(self) -> None:
        with patch("pplsolve.objects.solver_params.logger") as mock_logger:
            params = derive_plada_params(10.0, 0.1, UNIT_CONSTANTS, {"eta": 0.01}, bounded_domain=False)

        assert params.eta == 0.01
        assert any("unbounded" in call[0][0] for call in mock_logger.warning.call_args_list)

    def test_zero_constants_need_eta(self) -> None:
        with pytest.raises(ConfigurationError):
            derive_plada_params(10.0, 0.1, ConstantEstimates())

    def test_model_rejects_alpha_at_one(self) -> None:
        with pytest.raises(ValidationError):
            PladaParams(alpha=1.0, beta=0.1, rho=0.9, eta=0.1, tau=0.1)


@pytest.mark.unit
class TestDerivePpalaParams:
    """Default and overridden PPALA parameters."""

    def test_lipschitz_of_augmented_lagrangian(self) -> None:
        constants = ConstantEstimates(L_f=1.0, L_g=2.0, M_g=3.0, B_g=4.0, B_u=5.0, B_lambda=6.0)

        assert ppala_lipschitz(constants, 0.5) == pytest.approx(1.0 + 12.0 + 0.5 * (10.0 + 8.0 + 9.0))

    def test_default_steps(self) -> None:
        params = derive_ppala_params(10.0, 0.2, UNIT_CONSTANTS)
        rho = 10.0 / 3.0

        assert params.rho == pytest.approx(rho)
        assert params.eta == pytest.approx(0.9 / (1.0 + rho + 3.0 * rho))
        assert params.tau == pytest.approx(0.9 / (2.0 * rho))
        assert (params.p, params.q) == (0.1, 1.0)
        assert params.early_stop

    def test_early_stop_override(self) -> None:
        params = derive_ppala_params(10.0, 0.2, UNIT_CONSTANTS, {"early_stop": False, "p": 1.0})

        assert not params.early_stop
        assert params.p == 1.0

    def test_q_out_of_range(self) -> None:
        with pytest.raises(ParameterError):
            derive_ppala_params(10.0, 0.2, UNIT_CONSTANTS, {"q": 0.5})

    def test_plada_only_override_rejected(self) -> None:
        with pytest.raises(ParameterError):
            derive_ppala_params(10.0, 0.2, UNIT_CONSTANTS, {"gamma0": 0.1})
