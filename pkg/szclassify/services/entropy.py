# =======================================================================================
# szclassify/services/entropy.py - Feature Entropy and Ranking
# =======================================================================================
from typing import Sequence

import numpy as np

from ..models.dataset import FeatureMatrix
from ..models.schemas import BinningConfig, EntropyRanking, EntropyScore
from ..utils.exceptions import InvalidDistribution, TooFewRows
from .preprocessing import discretize

_SUM_TOLERANCE = 1e-9


def entropy(probabilities: Sequence[float]) -> float:
    """Shannon entropy in bits, with 0·log2(0) taken as 0."""
    p = np.asarray(probabilities, dtype=np.float64)
    if p.size == 0 or (p < 0).any() or abs(p.sum() - 1.0) > _SUM_TOLERANCE:
        raise InvalidDistribution(f"Not a probability distribution: {p.tolist()}")
    nz = p[p > 0]
    return float(max(0.0, -np.sum(nz * np.log2(nz))))


def counts_entropy(counts: np.ndarray) -> float:
    total = counts.sum()
    if total == 0:
        return 0.0
    return entropy(counts / total)


def column_entropy(m: FeatureMatrix, column: str, cfg: BinningConfig) -> EntropyScore:
    values = m.column(column)
    if values.size == 0:
        raise TooFewRows(f"Column '{column}' has no rows")
    bins = discretize(values, cfg)
    counts = np.bincount(bins, minlength=cfg.bin_count)
    return EntropyScore(column=column, entropy_bits=counts_entropy(counts))


def rank_features(m: FeatureMatrix, cfg: BinningConfig) -> EntropyRanking:
    """Highest entropy first; equal entropies keep schema order."""
    if m.n_cols < 1:
        raise TooFewRows("Cannot rank a matrix without feature columns")
    scores = [column_entropy(m, name, cfg) for name in m.names]
    # stable sort; ties (to 1e-12) keep schema order
    ordered = sorted(scores, key=lambda s: -round(s.entropy_bits, 12))
    return EntropyRanking(scores=ordered, bin_count=cfg.bin_count)
