"""
Utilidades pequeñas de álgebra lineal compartidas por los servicios.
"""
import numpy as np

from app.config.settings import settings


def frozen(array, dtype=float) -> np.ndarray:
    """Copia de solo lectura de un arreglo."""
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


def symmetric_part(X):
    """(X + Xᵀ)/2; funciona con arreglos numpy y expresiones cvxpy."""
    return (X + X.T) / 2


def significant(value: float, digits: int | None = None) -> float:
    """Redondea a `digits` cifras significativas (12 por defecto)."""
    digits = digits or settings.FLOAT_DIGITS
    return float(f"{float(value):.{digits}g}")


def significant_list(values, digits: int | None = None):
    """Versión recursiva de `significant` para listas y matrices."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 0:
        return significant(arr, digits)
    return [significant_list(v, digits) for v in arr]
