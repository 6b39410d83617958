"""Input validation helpers shared across the fitting modules."""

from __future__ import annotations

import numpy as np


def as_float_matrix(
    X, name: str = "X", allow_empty_rows: bool = False
) -> np.ndarray:
    """Coerce to a C-contiguous finite float64 matrix with d >= 1."""
    try:
        arr = np.asarray(X, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{name} must be numeric") from exc
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if arr.shape[1] < 1:
        raise ValueError(f"{name} must have at least one column")
    if not allow_empty_rows and arr.shape[0] < 1:
        raise ValueError(f"{name} must have at least one row")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return np.ascontiguousarray(arr)


def as_float_vector(y, name: str = "y", allow_empty: bool = False) -> np.ndarray:
    """Coerce to a contiguous finite float64 vector."""
    try:
        arr = np.asarray(y, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{name} must be numeric") from exc
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-dimensional, got shape {arr.shape}")
    if not allow_empty and arr.shape[0] < 1:
        raise ValueError(f"{name} must have at least one element")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    return np.ascontiguousarray(arr)


def check_paired(X: np.ndarray, y: np.ndarray, x_name: str = "X", y_name: str = "y") -> None:
    """Require one target per feature row."""
    if X.shape[0] != y.shape[0]:
        raise ValueError(
            f"{x_name} has {X.shape[0]} rows but {y_name} has {y.shape[0]} values"
        )


def check_width(X: np.ndarray, expected: int, name: str = "X") -> None:
    """Require the column count a fitted model was trained with."""
    if X.shape[1] != expected:
        raise ValueError(
            f"{name} has {X.shape[1]} features, expected {expected}"
        )
