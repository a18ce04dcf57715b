# =======================================================================================
# szclassify/models/schemas.py - Pydantic Models
# =======================================================================================
from typing import Annotated, Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .enums import AblationMode, SchemeKind, SplitMode


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


# ========== Preprocessing ==========

class BinningConfig(_Frozen):
    """Equal-width discretization used by entropy ranking."""
    bin_count: int = Field(10, ge=2, description="Number of equal-width bins")
    strategy: Literal["equal_width"] = "equal_width"


# ========== Classifiers ==========

class TreeConfig(_Frozen):
    """Decision tree with binary threshold splits chosen by information gain."""
    kind: Literal["dt"] = "dt"
    max_depth: Optional[int] = Field(None, ge=1, description="None = unlimited")
    min_samples_split: int = Field(2, ge=2)


class KnnConfig(_Frozen):
    kind: Literal["knn"] = "knn"
    k: Union[Literal["auto"], int] = Field("auto", description="Positive odd integer or 'auto'")
    distance: Literal["euclidean"] = "euclidean"
    standardize: bool = True

    @field_validator("k")
    @classmethod
    def _odd_positive(cls, v):
        if v == "auto":
            return v
        if isinstance(v, bool) or v < 1 or v % 2 == 0:
            raise ValueError("k must be a positive odd integer or 'auto'")
        return v


class SvmConfig(_Frozen):
    """Soft-margin RBF SVM trained in the dual."""
    kind: Literal["svm"] = "svm"
    C: float = Field(1.0, gt=0)
    gamma: Union[Literal["scale"], float] = Field("scale", description="Positive float or 'scale'")
    tolerance: float = Field(1e-3, gt=0)
    max_passes: int = Field(100, ge=1)
    seed: int = 42
    standardize: bool = True

    @field_validator("gamma")
    @classmethod
    def _positive_gamma(cls, v):
        if v != "scale" and v <= 0:
            raise ValueError("gamma must be positive or 'scale'")
        return v


ModelConfig = Annotated[Union[TreeConfig, KnnConfig, SvmConfig], Field(discriminator="kind")]


# ========== Evaluation ==========

class SplitPolicy(_Frozen):
    """How rows are partitioned into train/test folds."""
    mode: SplitMode = SplitMode.TRIAL_LEVEL
    scheme: SchemeKind = SchemeKind.KFOLD
    folds: int = Field(10, ge=2)
    stratified: bool = True
    test_fraction: float = Field(0.2, gt=0, lt=1)
    seed: int = 42

    def describe(self) -> str:
        if self.scheme is SchemeKind.KFOLD:
            return f"kfold:{self.folds}"
        if self.scheme is SchemeKind.HOLDOUT:
            return f"holdout:{self.test_fraction}"
        return "resub"


class EvalResult(_Frozen):
    """Accuracy of one model configuration under one split policy."""
    accuracy: float = Field(..., ge=0, le=1)
    per_fold: List[float]
    n_train: List[int]
    n_test: List[int]
    tp: int = 0
    tn: int = 0
    fp: int = 0
    fn: int = 0
    model: Dict[str, Any]
    policy: SplitPolicy
    group: Optional[str] = None
    n_features: int

    @model_validator(mode="after")
    def _consistent(self):
        if not self.per_fold or len(self.per_fold) != len(self.n_train) or len(self.n_train) != len(self.n_test):
            raise ValueError("per_fold, n_train and n_test must be non-empty and equally long")
        if any(a < 0 or a > 1 for a in self.per_fold):
            raise ValueError("fold accuracies must lie in [0, 1]")
        return self


# ========== Entropy ranking ==========

class EntropyScore(_Frozen):
    column: str
    entropy_bits: float = Field(..., ge=0)


class EntropyRanking(_Frozen):
    """Feature columns by descending entropy; ties keep schema order."""
    scores: List[EntropyScore]
    bin_count: int

    @property
    def names(self) -> List[str]:
        return [s.column for s in self.scores]


# ========== Ablation ==========

class AblationRecord(_Frozen):
    step: int = Field(..., ge=1)
    removed: str
    remaining_count: int = Field(..., ge=1)
    accuracy: float = Field(..., ge=0, le=1)


class AblationReport(_Frozen):
    mode: AblationMode
    baseline_accuracy: float
    feature_count: int
    records: List[AblationRecord]
    model: Dict[str, Any]
    policy: SplitPolicy
    binning: Optional[BinningConfig] = None
    ranking: Optional[EntropyRanking] = None

    def plot_points(self) -> List[tuple]:
        """(step, accuracy) pairs with the baseline as step 0."""
        return [(0, self.baseline_accuracy)] + [(r.step, r.accuracy) for r in self.records]


# ========== Synthetic cohort ==========

class SynthConfig(_Frozen):
    """Two-class Gaussian cohort in the canonical schema."""
    n_hc: int = Field(32, ge=1)
    n_sz: int = Field(49, ge=1)
    effect_size: float = Field(1.0, ge=0, description="Mean separation in σ units on informative columns")
    noise_dims_informative: bool = False
    trials_per_subject: int = Field(1, ge=1)
    informative_columns: int = Field(9, ge=1, le=9, description="How many N100 electrodes carry the shift")
    seed: int = 42


# ========== Run artifacts ==========

class IngestReport(_Frozen):
    ok: bool
    violations: List[str] = []
    table_rows: Dict[str, int] = {}
    dropped_rows: Dict[str, int] = {}
    n_rows: int = 0
    n_cols: int = 0
    label_counts: Dict[str, int] = {}


class RunManifest(_Frozen):
    """Provenance of one CLI invocation."""
    run_id: str
    command: str
    argv: List[str]
    tool_version: str
    seed: int
    configs: Dict[str, Any]
    inputs: Dict[str, str]
    outputs: Dict[str, str]
    started_at: str
    finished_at: str
