"""Distance correlation with the biased (V-statistic) double-centred estimator."""

import numpy as np
from scipy.spatial.distance import pdist, squareform

from app.core.errors import InputError


def _as_vector(v, name: str) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.ndim != 1:
        raise InputError(f"{name} must be a vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name} contains non-finite values")
    return arr


def check_pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    x = _as_vector(x, "x")
    y = _as_vector(y, "y")
    if x.shape[0] != y.shape[0]:
        raise InputError(f"length mismatch: {x.shape[0]} vs {y.shape[0]}")
    if x.shape[0] < 2:
        raise InputError(f"need at least 2 observations, got {x.shape[0]}")
    return x, y


def double_centered(v: np.ndarray) -> np.ndarray:
    a = squareform(pdist(v[:, None], metric="euclidean"))
    return a - a.mean(axis=0)[None, :] - a.mean(axis=1)[:, None] + a.mean()


def dcorr_from_centered(A: np.ndarray, B: np.ndarray) -> float:
    dvar_x = float(np.mean(A * A))
    dvar_y = float(np.mean(B * B))
    if dvar_x <= 0.0 or dvar_y <= 0.0:
        return 0.0
    dcov2 = max(float(np.mean(A * B)), 0.0)
    return float(min(np.sqrt(dcov2 / np.sqrt(dvar_x * dvar_y)), 1.0))


def distance_correlation(x, y) -> float:
    """Returns 0 when either input is constant."""
    x, y = check_pair(x, y)
    return dcorr_from_centered(double_centered(x), double_centered(y))
