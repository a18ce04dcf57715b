# =======================================================================================
# szclassify/models/__init__.py - Models Package
# =======================================================================================
from .enums import *
from .schemas import *
from .dataset import Column, ColumnSchema, FeatureMatrix, RawTable

__all__ = [
    "Electrode", "ErpComponent", "ColumnKind", "Label", "DatasetGroup", "TableKind",
    "SplitMode", "SchemeKind", "AblationMode",
    "BinningConfig", "TreeConfig", "KnnConfig", "SvmConfig", "ModelConfig", "SplitPolicy",
    "EvalResult", "EntropyScore", "EntropyRanking", "AblationRecord", "AblationReport",
    "SynthConfig", "IngestReport", "RunManifest",
    "Column", "ColumnSchema", "FeatureMatrix", "RawTable",
]
