# =======================================================================================
# szclassify/utils/__init__.py - Utils Package
# =======================================================================================
from .exceptions import *

__all__ = [
    "SzClassifyError", "InvalidConfig", "DataError", "ModelError", "EvaluationError",
]
