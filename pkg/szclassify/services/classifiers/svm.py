# =======================================================================================
# szclassify/services/classifiers/svm.py - RBF Support Vector Machine (SMO)
# =======================================================================================
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from loguru import logger

from ...models.dataset import FeatureMatrix
from ...models.schemas import SvmConfig
from ...utils.exceptions import EmptyTrainingSet, SingleClassTraining
from ..preprocessing import StandardizerState, fit_standardizer
from .distance import rbf_matrix

_TAU = 1e-12


def resolve_gamma(X: np.ndarray, gamma) -> float:
    """'scale' → 1 / (n_features * mean feature variance), 1.0 when that is undefined."""
    if gamma != "scale":
        return float(gamma)
    if X.shape[1] == 0:
        return 1.0
    mean_var = float(X.var(axis=0).mean())
    return 1.0 / (X.shape[1] * mean_var) if mean_var > 0 else 1.0


@dataclass(frozen=True)
class SmoResult:
    alpha: np.ndarray
    bias: float
    iterations: int
    converged: bool
    gap: float


def smo(K: np.ndarray, y: np.ndarray, C: float, tol: float, max_iter: int, seed: int) -> SmoResult:
    """Solve min ½αᵀQα − Σα  s.t. 0 ≤ α ≤ C, Σ y_i α_i = 0, with Q_ij = y_i y_j K_ij.

    Each step optimizes the maximal violating pair analytically. Equal
    violations are resolved by a seed-derived permutation of the rows.
    Stops when the KKT gap m(α) − M(α) drops to tol.
    """
    n = len(y)
    yf = y.astype(np.float64)
    Q = np.outer(yf, yf) * K
    alpha = np.zeros(n)
    G = -np.ones(n)  # gradient Qα − 1
    perm = np.random.default_rng(seed).permutation(n)

    iterations = 0
    converged = False
    gap = np.inf
    while True:
        score = -yf * G
        up = ((yf > 0) & (alpha < C)) | ((yf < 0) & (alpha > 0))
        low = ((yf > 0) & (alpha > 0)) | ((yf < 0) & (alpha < C))

        up_scores = np.where(up[perm], score[perm], -np.inf)
        low_scores = np.where(low[perm], score[perm], np.inf)
        i = int(perm[np.argmax(up_scores)])
        j = int(perm[np.argmin(low_scores)])
        gap = float(up_scores.max() - low_scores.min())
        if gap <= tol:
            converged = True
            break
        if iterations >= max_iter:
            break
        iterations += 1

        old_i, old_j = alpha[i], alpha[j]
        if yf[i] != yf[j]:
            quad = max(Q[i, i] + Q[j, j] + 2.0 * Q[i, j], _TAU)
            delta = (-G[i] - G[j]) / quad
            diff = old_i - old_j
            ai, aj = old_i + delta, old_j + delta
            if diff > 0:
                if aj < 0:
                    aj, ai = 0.0, diff
            elif ai < 0:
                ai, aj = 0.0, -diff
            if diff > 0:
                if ai > C:
                    ai, aj = C, C - diff
            elif aj > C:
                aj, ai = C, C + diff
        else:
            quad = max(Q[i, i] + Q[j, j] - 2.0 * Q[i, j], _TAU)
            delta = (G[i] - G[j]) / quad
            total = old_i + old_j
            ai, aj = old_i - delta, old_j + delta
            if total > C:
                if ai > C:
                    ai, aj = C, total - C
            elif aj < 0:
                aj, ai = 0.0, total
            if total > C:
                if aj > C:
                    aj, ai = C, total - C
            elif ai < 0:
                ai, aj = 0.0, total

        alpha[i], alpha[j] = ai, aj
        G += Q[:, i] * (ai - old_i) + Q[:, j] * (aj - old_j)

    score = -yf * G
    free = (alpha > 0) & (alpha < C)
    if free.any():
        bias = float(score[free].mean())
    else:
        up = ((yf > 0) & (alpha < C)) | ((yf < 0) & (alpha > 0))
        low = ((yf > 0) & (alpha > 0)) | ((yf < 0) & (alpha < C))
        hi = score[up].max() if up.any() else score[low].min()
        lo = score[low].min() if low.any() else hi
        bias = float((hi + lo) / 2.0)
    return SmoResult(alpha=alpha, bias=bias, iterations=iterations, converged=converged, gap=gap)


@dataclass(frozen=True)
class SvmModel:
    """Support vectors, dual coefficients α_i·y_i, bias and γ."""
    config: SvmConfig
    columns: Tuple[str, ...]
    support_vectors: np.ndarray
    dual_coef: np.ndarray
    bias: float
    gamma: float
    converged: bool = True
    iterations: int = 0
    standardizer: Optional[StandardizerState] = None
    kind: str = "svm"

    @property
    def alphas(self) -> np.ndarray:
        return np.abs(self.dual_coef)

    def decision_values(self, X: np.ndarray) -> np.ndarray:
        if self.standardizer is not None:
            X = self.standardizer.transform(X)
        if len(self.dual_coef) == 0:
            return np.full(X.shape[0], self.bias)
        return rbf_matrix(X, self.support_vectors, self.gamma) @ self.dual_coef + self.bias

    def predict_values(self, X: np.ndarray) -> np.ndarray:
        # f(x) = 0 is HC
        return (self.decision_values(X) > 0).astype(np.int8)

    def params_to_dict(self) -> Dict[str, Any]:
        return {
            "support_vectors": self.support_vectors.tolist(),
            "dual_coef": self.dual_coef.tolist(),
            "bias": self.bias,
            "gamma": self.gamma,
            "converged": self.converged,
            "iterations": self.iterations,
            "standardizer": self.standardizer.to_dict() if self.standardizer else None,
        }

    @classmethod
    def from_params(cls, config: SvmConfig, columns: Tuple[str, ...], params: Dict[str, Any]) -> "SvmModel":
        state = params.get("standardizer")
        coef = np.asarray(params["dual_coef"], dtype=np.float64)
        return cls(
            config=config,
            columns=columns,
            support_vectors=np.asarray(params["support_vectors"], dtype=np.float64).reshape(len(coef), len(columns)),
            dual_coef=coef,
            bias=float(params["bias"]),
            gamma=float(params["gamma"]),
            converged=bool(params.get("converged", True)),
            iterations=int(params.get("iterations", 0)),
            standardizer=StandardizerState.from_dict(state) if state else None,
        )


def fit_svm(train: FeatureMatrix, cfg: SvmConfig) -> SvmModel:
    n = train.n_rows
    if n == 0:
        raise EmptyTrainingSet("Cannot fit an SVM on zero rows")
    classes = np.unique(train.labels)
    if n < 2 or classes.size < 2:
        raise SingleClassTraining(f"SVM training needs both classes, got {classes.size} over {n} rows")

    state: Optional[StandardizerState] = None
    X = train.values
    if cfg.standardize:
        state = fit_standardizer(train)
        X = state.transform(X)

    y = np.where(train.labels == 1, 1, -1)  # SZ → +1, HC → −1
    gamma = resolve_gamma(X, cfg.gamma)
    K = rbf_matrix(X, X, gamma)
    result = smo(K, y, cfg.C, cfg.tolerance, cfg.max_passes * n, cfg.seed)
    if not result.converged:
        logger.warning(
            f"SVM did not converge within {cfg.max_passes} passes "
            f"({result.iterations} pair updates, KKT gap {result.gap:.2e} > {cfg.tolerance})"
        )

    sv = result.alpha > 0
    support_vectors = np.array(X[sv], copy=True)
    dual_coef = result.alpha[sv] * y[sv]
    support_vectors.setflags(write=False)
    dual_coef.setflags(write=False)
    return SvmModel(
        config=cfg,
        columns=train.names,
        support_vectors=support_vectors,
        dual_coef=dual_coef,
        bias=result.bias,
        gamma=gamma,
        converged=result.converged,
        iterations=result.iterations,
        standardizer=state,
    )
