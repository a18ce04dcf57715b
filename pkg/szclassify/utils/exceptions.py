# =======================================================================================
# szclassify/utils/exceptions.py - Custom Exceptions
# =======================================================================================
from typing import Dict


class SzClassifyError(Exception):
    """Base exception for the classification pipeline."""

    def to_dict(self) -> Dict[str, str]:
        return {"error": type(self).__name__, "message": str(self)}

class InvalidConfig(SzClassifyError):
    """Raised when a configuration object is inconsistent."""
    pass

# ---------- data / schema ----------

class DataError(SzClassifyError):
    """Raised for problems with input tables or feature matrices."""
    pass

class MissingFile(DataError):
    """Raised when an input file does not exist."""

    def __init__(self, path):
        self.path = str(path)
        super().__init__(f"Input file not found: {self.path}")

class MissingHeader(DataError):
    """Raised when an input file has no header row."""
    pass

class HeaderMismatch(DataError):
    """Raised when required header names are absent."""

    def __init__(self, path, missing):
        self.path = str(path)
        self.missing = sorted(missing)
        super().__init__(f"{self.path}: missing required columns {', '.join(self.missing)}")

class NonNumericCell(DataError):
    """Raised when a numeric column holds a non-numeric value."""

    def __init__(self, path, row: int, column: str, value: str):
        self.path = str(path)
        self.row = row
        self.column = column
        self.value = value
        super().__init__(f"{self.path}: row {row}, column '{column}': non-numeric value {value!r}")

class InvalidCategory(DataError):
    """Raised when a categorical cell (group, gender) has an unknown value."""
    pass

class UnknownSubject(DataError):
    """Raised when an observation row references a subject missing elsewhere."""
    pass

class DuplicateDemographics(DataError):
    """Raised when a subject appears twice in the demographics table."""
    pass

class LabelConflict(DataError):
    """Raised when tables disagree on a subject's group."""
    pass

class RowCountMismatch(DataError):
    """Raised when ERP and EEG rows of a subject cannot be paired."""
    pass

class EmptySelection(DataError):
    """Raised when a dataset group selects no columns."""
    pass

class UnknownColumn(DataError):
    """Raised when a column name is not in the schema."""

    def __init__(self, names):
        self.names = sorted(names)
        super().__init__(f"Unknown column(s): {', '.join(self.names)}")

class SchemaMismatch(DataError):
    """Raised when two column schemas differ where they must agree."""
    pass

class TooFewRows(DataError):
    """Raised when an operation needs more rows than supplied."""
    pass

class NonFiniteValue(DataError):
    """Raised when NaN or infinity reaches a numeric routine."""
    pass

# ---------- math ----------

class InvalidDistribution(SzClassifyError):
    """Raised when probabilities are negative or do not sum to one."""
    pass

class LengthMismatch(SzClassifyError):
    """Raised when two feature vectors differ in length."""
    pass

# ---------- models ----------

class ModelError(SzClassifyError):
    """Raised when fitting or applying a classifier fails."""
    pass

class EmptyTrainingSet(ModelError):
    """Raised when a classifier is fitted on zero rows."""
    pass

class KTooLarge(ModelError):
    """Raised when k exceeds the training-set size."""
    pass

class SingleClassTraining(ModelError):
    """Raised when the SVM sees only one class."""
    pass

class ModelFormatError(ModelError):
    """Raised when a saved model document cannot be read."""
    pass

# ---------- evaluation ----------

class EvaluationError(SzClassifyError):
    """Raised when a split policy cannot be applied."""
    pass

class SingleClass(EvaluationError):
    """Raised when a matrix to split holds only one class."""
    pass

class InfeasibleStratification(EvaluationError):
    """Raised when the requested partition cannot be built."""
    pass
