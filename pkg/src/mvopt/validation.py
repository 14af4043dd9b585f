"""Input validation helpers shared by the functional API and the estimators."""

import numpy as np


def as_float_matrix(x, name: str = "X") -> np.ndarray:
    """Coerce ``x`` to a 2-D float64 array with finite entries."""
    a = np.asarray(x, dtype=float)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got ndim={a.ndim}")
    if a.size == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite values")
    return a


def as_float_vector(x, name: str = "x") -> np.ndarray:
    """Coerce ``x`` to a 1-D float64 array with finite entries."""
    a = np.asarray(x, dtype=float)
    if a.ndim != 1:
        raise ValueError(f"{name} must be 1-dimensional, got ndim={a.ndim}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite values")
    return a


def check_square(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    return a


def check_symmetric(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    """Require exact (bitwise) symmetry; use :func:`symmetrize` to repair."""
    check_square(a, name)
    if not np.array_equal(a, a.T):
        raise ValueError(f"{name} is not symmetric")
    return a


def symmetrize(a: np.ndarray) -> np.ndarray:
    """Return ``(a + a.T) / 2``, which is exactly symmetric in IEEE arithmetic."""
    return (a + a.T) / 2.0


def column_labels(x, n_columns: int):
    """Extract column labels from a dataframe-like ``x``, else None."""
    cols = getattr(x, "columns", None)
    if cols is None:
        return None
    labels = tuple(str(c) for c in cols)
    if len(labels) != n_columns:
        return None
    return labels


def default_symbols(n: int):
    """Placeholder asset names used when no tickers are supplied."""
    return tuple(f"A{i + 1}" for i in range(n))
