# =======================================================================================
# szclassify/services/classifiers/distance.py - Euclidean Distance and RBF Kernel
# =======================================================================================
import numpy as np

from ...utils.exceptions import InvalidConfig, NonFiniteValue
from ...utils.validators import SchemaValidator

# cap on the (rows x rows x features) difference tensor built per block
_BLOCK_ELEMENTS = 4_000_000


def _vectors(a, b):
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    SchemaValidator.same_length(a, b)
    return a, b


def euclidean_distance(a, b) -> float:
    """sqrt(sum((a_i - b_i)^2)) in any number of dimensions."""
    a, b = _vectors(a, b)
    if not (np.isfinite(a).all() and np.isfinite(b).all()):
        raise NonFiniteValue("Distance inputs must be finite")
    return float(np.sqrt(np.sum((a - b) ** 2)))


def rbf_kernel(a, b, gamma: float) -> float:
    """exp(-gamma * ||a - b||^2)."""
    if gamma < 0:
        raise InvalidConfig(f"gamma must be non-negative, got {gamma}")
    a, b = _vectors(a, b)
    return float(np.exp(-gamma * np.sum((a - b) ** 2)))


def squared_distances(X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    """All pairwise squared Euclidean distances, rows of X against rows of Y."""
    out = np.empty((X.shape[0], Y.shape[0]), dtype=np.float64)
    block = max(1, _BLOCK_ELEMENTS // max(1, Y.shape[0] * X.shape[1]))
    for start in range(0, X.shape[0], block):
        diff = X[start:start + block, np.newaxis, :] - Y[np.newaxis, :, :]
        out[start:start + block] = np.einsum("ijk,ijk->ij", diff, diff)
    return out


def rbf_matrix(X: np.ndarray, Y: np.ndarray, gamma: float) -> np.ndarray:
    return np.exp(-gamma * squared_distances(X, Y))
