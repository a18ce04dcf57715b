# =======================================================================================
# szclassify/services/classifiers/knn.py - k-Nearest Neighbours
# =======================================================================================
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from loguru import logger

from ...models.dataset import FeatureMatrix
from ...models.schemas import KnnConfig
from ...utils.exceptions import EmptyTrainingSet, KTooLarge
from ..preprocessing import StandardizerState, fit_standardizer
from .distance import squared_distances

AUTO_MAX_K = 31
AUTO_FOLDS = 5


def neighbour_order(X_query: np.ndarray, X_train: np.ndarray) -> np.ndarray:
    """Training rows sorted by Euclidean distance per query; equal distances keep lower index first."""
    distances = np.sqrt(squared_distances(X_query, X_train))
    return np.argsort(distances, axis=1, kind="stable")


def vote(order: np.ndarray, y_train: np.ndarray, k: int) -> np.ndarray:
    """Majority label among the k nearest; a tied vote takes the nearest neighbour's label."""
    nearest = y_train[order[:, :k]]
    pos = nearest.sum(axis=1)
    neg = k - pos
    return np.where(pos > neg, 1, np.where(neg > pos, 0, nearest[:, 0])).astype(np.int8)


def resolve_k(X: np.ndarray, y: np.ndarray) -> Tuple[int, Dict[int, float]]:
    """Pick k by internal cross-validation over odd k.

    Row i is held out in fold i mod 5 (fewer folds below 5 rows). The best mean
    fold accuracy wins; equal accuracies go to the smaller k.
    """
    n = len(y)
    if n < 2:
        return 1, {1: 1.0}

    n_folds = min(AUTO_FOLDS, n)
    fold_of = np.arange(n) % n_folds
    smallest_train = n - int(np.bincount(fold_of).max())
    k_max = min(AUTO_MAX_K, n - 1, smallest_train)
    candidates = list(range(1, k_max + 1, 2))

    scores = np.zeros((n_folds, len(candidates)))
    for f in range(n_folds):
        test = np.flatnonzero(fold_of == f)
        train = np.flatnonzero(fold_of != f)
        order = neighbour_order(X[test], X[train])
        for c, k in enumerate(candidates):
            scores[f, c] = np.mean(vote(order, y[train], k) == y[test])

    mean = scores.mean(axis=0)
    best = int(np.flatnonzero(mean >= mean.max() - 1e-12)[0])
    return candidates[best], dict(zip(candidates, mean.tolist()))


@dataclass(frozen=True)
class KnnModel:
    """Stored (standardized) training rows plus the resolved k."""
    config: KnnConfig
    columns: Tuple[str, ...]
    X: np.ndarray
    y: np.ndarray
    k: int
    standardizer: Optional[StandardizerState] = None
    kind: str = "knn"

    def predict_values(self, X: np.ndarray) -> np.ndarray:
        if self.standardizer is not None:
            X = self.standardizer.transform(X)
        return vote(neighbour_order(X, self.X), self.y, self.k)

    def params_to_dict(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "X": self.X.tolist(),
            "y": self.y.tolist(),
            "standardizer": self.standardizer.to_dict() if self.standardizer else None,
        }

    @classmethod
    def from_params(cls, config: KnnConfig, columns: Tuple[str, ...], params: Dict[str, Any]) -> "KnnModel":
        state = params.get("standardizer")
        return cls(
            config=config,
            columns=columns,
            X=np.asarray(params["X"], dtype=np.float64).reshape(len(params["y"]), len(columns)),
            y=np.asarray(params["y"], dtype=np.int8),
            k=int(params["k"]),
            standardizer=StandardizerState.from_dict(state) if state else None,
        )


def fit_knn(train: FeatureMatrix, cfg: KnnConfig) -> KnnModel:
    n = train.n_rows
    if n == 0:
        raise EmptyTrainingSet("Cannot fit k-NN on zero rows")
    if cfg.k != "auto" and cfg.k > n:
        raise KTooLarge(f"k={cfg.k} exceeds the {n} training rows")

    state: Optional[StandardizerState] = None
    X = train.values
    if cfg.standardize and n >= 2:
        state = fit_standardizer(train)
        X = state.transform(X)
    y = train.labels.copy()

    if cfg.k == "auto":
        k, scores = resolve_k(X, y)
        logger.debug(f"k-NN AUTO resolved k={k} (inner CV accuracy {scores[k]:.4f})")
    else:
        k = cfg.k

    X = np.array(X, copy=True)
    X.setflags(write=False)
    y.setflags(write=False)
    return KnnModel(config=cfg, columns=train.names, X=X, y=y, k=k, standardizer=state)
