import logging
from argparse import Namespace

import pytest
from pydantic import ValidationError

from app.config.settings import Settings, settings
from app.middleware.logging_middleware import LoggingMiddleware
from app.models.optimization.optimization_enums import InitStrategy
from app.routers.reduction.reduction_router import run_config_from_args
from app.schemas.config.run_config_schema import RunConfig
from app.utils import exceptions
from app.utils.exceptions import ConfigurationError, ConnectivityError


def test_run_config_defaults_come_from_settings():
    config = RunConfig()
    assert config.delta_hat == settings.DELTA_HAT
    assert config.tol == settings.STOP_TOL
    assert config.max_iter == settings.MAX_ITER
    assert config.init is InitStrategy.PROJECTION
    assert config.resolve_w_min([2.0, 1.0]) == pytest.approx(settings.W_MIN_FACTOR * 2.0)
    assert RunConfig(w_min=0.1).resolve_w_min([2.0, 1.0]) == 0.1


def test_delta_hat_must_be_small():
    with pytest.raises(ValidationError):
        RunConfig(delta_hat=1.0)


def test_settings_read_environment(monkeypatch):
    monkeypatch.setenv("DELTA_HAT", "0.001")
    monkeypatch.setenv("SOLVER", "SCS")
    fresh = Settings()
    assert fresh.DELTA_HAT == 0.001
    assert fresh.SOLVER == "SCS"


def test_cli_flags_override_settings():
    args = Namespace(delta_hat=1e-3, tol=None, max_iter=7, w_min=None, eps_psd=None,
                     solver_tol=None, keep_descending=None, init="cycles")
    config = run_config_from_args(args)
    assert (config.delta_hat, config.max_iter, config.init) == (1e-3, 7, InitStrategy.CYCLES)
    assert config.tol == settings.STOP_TOL


def test_invalid_flags_raise_configuration_error():
    with pytest.raises(ConfigurationError):
        run_config_from_args(Namespace(delta_hat=5.0))


@pytest.mark.parametrize(
    "error, code",
    [
        (exceptions.ParseError, 2),
        (exceptions.ConnectivityError, 3),
        (exceptions.SolverError, 4),
        (exceptions.AdmissibilityError, 5),
        (exceptions.InvalidGraphError, 6),
        (exceptions.NumericalError, 7),
        (exceptions.ConfigurationError, 8),
        (exceptions.NetworkReductionError, 1),
    ],
)
def test_exit_codes(error, code):
    e = error("detalle")
    assert e.exit_code == code
    assert str(e) == "detalle"


def test_middleware_logs_command_and_exit_code(caplog):
    def failing(args):
        raise ConnectivityError("sin conexión")

    with caplog.at_level(logging.INFO, logger="app"):
        with pytest.raises(ConnectivityError):
            LoggingMiddleware().dispatch(Namespace(command="balance"), failing)
        assert LoggingMiddleware().dispatch(Namespace(command="gen"), lambda args: 0) == 0

    messages = [r.getMessage() for r in caplog.records]
    assert "Comando: balance" in messages
    assert any(m.startswith("Fin: balance - Código: 3") for m in messages)
    assert any(m.startswith("Fin: gen - Código: 0") for m in messages)
