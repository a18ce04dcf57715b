# =======================================================================================
# szclassify/models/enums.py - Enums and Constants
# =======================================================================================
from enum import Enum, IntEnum
from typing import Dict, FrozenSet, Literal, Tuple

# Type aliases for better type hints
ModelKind = Literal["dt", "knn", "svm"]
GammaSpec = Literal["scale"]
KSpec = Literal["auto"]

class Electrode(str, Enum):
    """Scalp electrode sites, in canonical order."""
    Fz = "Fz"
    FCz = "FCz"
    Cz = "Cz"
    FC3 = "FC3"
    FC4 = "FC4"
    C3 = "C3"
    C4 = "C4"
    CP3 = "CP3"
    CP4 = "CP4"

class ErpComponent(str, Enum):
    """ERP measures per electrode, in canonical order."""
    B0 = "B0"
    N100 = "N100"
    P200 = "P200"
    B1 = "B1"

class ColumnKind(str, Enum):
    ERP = "erp"
    RAW_ELECTRODE = "raw_electrode"
    TIMING = "timing"
    DEMOGRAPHIC = "demographic"

class Label(IntEnum):
    """Diagnostic class. SZ is the positive class (+1 inside the SVM)."""
    HC = 0
    SZ = 1

    @property
    def sign(self) -> int:
        return 1 if self is Label.SZ else -1

class DatasetGroup(str, Enum):
    ERP_ONLY = "erp"
    EEG_DEMOGRAPHIC = "eeg-demo"
    ALL = "all"

    @property
    def kinds(self) -> FrozenSet[ColumnKind]:
        return GROUP_KINDS[self]

    @property
    def header(self) -> str:
        return GROUP_TITLES[self]

GROUP_KINDS: Dict[DatasetGroup, FrozenSet[ColumnKind]] = {
    DatasetGroup.ERP_ONLY: frozenset({ColumnKind.ERP}),
    DatasetGroup.EEG_DEMOGRAPHIC: frozenset(
        {ColumnKind.RAW_ELECTRODE, ColumnKind.TIMING, ColumnKind.DEMOGRAPHIC}
    ),
    DatasetGroup.ALL: frozenset(ColumnKind),
}

# results-grid column headers
GROUP_TITLES: Dict[DatasetGroup, str] = {
    DatasetGroup.ERP_ONLY: "ERP",
    DatasetGroup.EEG_DEMOGRAPHIC: "EEG & demographic",
    DatasetGroup.ALL: "ALL",
}

MODEL_TITLES: Dict[str, str] = {
    "svm": "SVM",
    "dt": "Decision Tree Classification",
    "knn": "K-NN",
}

class TableKind(str, Enum):
    DEMOGRAPHICS = "demographics"
    ERP_AVERAGES = "erp_averages"
    EEG_TRIALS = "eeg_trials"

class SplitMode(str, Enum):
    TRIAL_LEVEL = "trial_level"
    SUBJECT_LEVEL = "subject_level"

class SchemeKind(str, Enum):
    HOLDOUT = "holdout"
    KFOLD = "kfold"
    RESUBSTITUTION = "resubstitution"

class AblationMode(str, Enum):
    LEAVE_ONE_OUT = "leave_one_out"
    ENTROPY_INCREMENTAL = "entropy_incremental"

# ---------- canonical column names ----------

SUBJECT_COLUMN = "subject"
GROUP_COLUMN = "group"
TIMING_COLUMNS: Tuple[str, ...] = ("ITI", "time_ms")
DEMOGRAPHIC_COLUMNS: Tuple[str, ...] = ("age", "gender", "education")

def erp_column(electrode: Electrode, component: ErpComponent) -> str:
    return f"{electrode.value}_{component.value}"

# electrode-major, component-minor
ERP_COLUMNS: Tuple[str, ...] = tuple(
    erp_column(e, c) for e in Electrode for c in ErpComponent
)
RAW_ELECTRODE_COLUMNS: Tuple[str, ...] = tuple(e.value for e in Electrode)

REQUIRED_HEADERS: Dict[TableKind, Tuple[str, ...]] = {
    TableKind.DEMOGRAPHICS: (SUBJECT_COLUMN, *DEMOGRAPHIC_COLUMNS, GROUP_COLUMN),
    TableKind.ERP_AVERAGES: (SUBJECT_COLUMN, GROUP_COLUMN, *TIMING_COLUMNS, *ERP_COLUMNS),
    TableKind.EEG_TRIALS: (SUBJECT_COLUMN, GROUP_COLUMN, *RAW_ELECTRODE_COLUMNS),
}

# Columns parsed as text rather than numbers
CATEGORICAL_COLUMNS: FrozenSet[str] = frozenset({SUBJECT_COLUMN, GROUP_COLUMN, "gender"})

CANONICAL_FILES: Dict[TableKind, str] = {
    TableKind.DEMOGRAPHICS: "demographics.csv",
    TableKind.ERP_AVERAGES: "erp_averages.csv",
    TableKind.EEG_TRIALS: "eeg_trials.csv",
}
