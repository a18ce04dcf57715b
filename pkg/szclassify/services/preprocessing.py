# =======================================================================================
# szclassify/services/preprocessing.py - Standardization and Discretization
# =======================================================================================
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from ..models.dataset import FeatureMatrix
from ..models.schemas import BinningConfig
from ..utils.exceptions import NonFiniteValue, TooFewRows
from ..utils.validators import SchemaValidator


@dataclass(frozen=True)
class StandardizerState:
    """Per-column mean and population standard deviation of a training matrix."""
    columns: Tuple[str, ...]
    mean: Tuple[float, ...]
    std: Tuple[float, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {"columns": list(self.columns), "mean": list(self.mean), "std": list(self.std)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "StandardizerState":
        return cls(tuple(data["columns"]), tuple(float(v) for v in data["mean"]), tuple(float(v) for v in data["std"]))

    def transform(self, values: np.ndarray) -> np.ndarray:
        mean = np.asarray(self.mean)
        std = np.asarray(self.std)
        safe = np.where(std > 0, std, 1.0)
        out = (values - mean) / safe
        out[:, std == 0] = 0.0
        return out

    def invert(self, values: np.ndarray) -> np.ndarray:
        """Undo transform; constant columns come back as their mean."""
        return values * np.asarray(self.std) + np.asarray(self.mean)


def fit_standardizer(train: FeatureMatrix) -> StandardizerState:
    if train.n_rows < 2:
        raise TooFewRows(f"Standardizer needs at least 2 rows, got {train.n_rows}")
    mean = train.values.mean(axis=0)
    std = train.values.std(axis=0)  # ddof=0
    # exact zero for constant columns, whatever the rounding in std()
    std = np.where(np.ptp(train.values, axis=0) == 0, 0.0, std)
    return StandardizerState(
        columns=train.names,
        mean=tuple(float(v) for v in mean),
        std=tuple(float(v) for v in std),
    )


def apply_standardizer(s: StandardizerState, m: FeatureMatrix) -> FeatureMatrix:
    SchemaValidator.same_columns(s.columns, m.names)
    return m.with_values(s.transform(m.values))


def discretize_column(values: Sequence[float], cfg: BinningConfig) -> List[int]:
    """Equal-width bin indices over [min, max]; the maximum lands in the last bin."""
    return discretize(np.asarray(values, dtype=np.float64), cfg).tolist()


def discretize(values: np.ndarray, cfg: BinningConfig) -> np.ndarray:
    if values.size == 0:
        raise TooFewRows("Cannot discretize an empty column")
    if not np.isfinite(values).all():
        raise NonFiniteValue("Cannot discretize NaN or infinite values")

    lo, hi = float(values.min()), float(values.max())
    if hi == lo:
        return np.zeros(values.shape, dtype=np.int64)
    scaled = (values - lo) / (hi - lo) * cfg.bin_count
    return np.minimum(np.floor(scaled).astype(np.int64), cfg.bin_count - 1)
