"""
Schema Pydantic para la configuración de una corrida.
Los valores por defecto se leen de `settings`; los flags de la CLI los reemplazan.
"""
from typing import Optional

from pydantic import BaseModel, Field, field_validator

from app.config.settings import settings
from app.models.optimization.optimization_enums import InitStrategy


class RunConfig(BaseModel):
    """Parámetros del optimizador"""
    delta_hat: float = Field(default_factory=lambda: settings.DELTA_HAT, gt=0)
    tol: float = Field(default_factory=lambda: settings.STOP_TOL, gt=0)
    max_iter: int = Field(default_factory=lambda: settings.MAX_ITER, ge=1)
    w_min: Optional[float] = Field(None, gt=0)  # None: W_MIN_FACTOR · max ŵ⁽⁰⁾
    eps_psd: float = Field(default_factory=lambda: settings.EPS_PSD, gt=0)
    solver_tol: float = Field(default_factory=lambda: settings.SOLVER_TOL, gt=0)
    keep_descending: bool = Field(default_factory=lambda: settings.KEEP_DESCENDING)
    init: InitStrategy = InitStrategy.PROJECTION

    @field_validator('delta_hat')
    @classmethod
    def validate_delta_hat(cls, v):
        """δ̂ pequeño: la cota se aproxima a la norma H2 cuando δ̂ → 0"""
        if v >= 1:
            raise ValueError('delta_hat debe ser menor que 1')
        return v

    def resolve_w_min(self, initial_weights) -> float:
        if self.w_min is not None:
            return self.w_min
        return settings.W_MIN_FACTOR * float(max(initial_weights, default=0.0))
