# =======================================================================================
# szclassify/services/classifiers/trained.py - Fit/Predict Contract and Model Files
# =======================================================================================
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import numpy as np
from pydantic import TypeAdapter, ValidationError

from ...models.dataset import FeatureMatrix
from ...models.enums import Label
from ...models.schemas import KnnConfig, ModelConfig, SvmConfig, TreeConfig
from ...utils.exceptions import ModelFormatError
from ...utils.validators import SchemaValidator
from .knn import KnnModel, fit_knn
from .svm import SvmModel, fit_svm
from .tree import TreeModel, fit_tree

MODEL_FORMAT_VERSION = 1

TrainedModel = Union[TreeModel, KnnModel, SvmModel]

_MODEL_CLASSES = {"dt": TreeModel, "knn": KnnModel, "svm": SvmModel}
_config_adapter = TypeAdapter(ModelConfig)


def parse_model_config(data: Dict[str, Any]):
    """Build the TreeConfig / KnnConfig / SvmConfig named by data['kind']."""
    return _config_adapter.validate_python(data)


def fit_model(train: FeatureMatrix, cfg) -> TrainedModel:
    if isinstance(cfg, TreeConfig):
        return fit_tree(train, cfg)
    if isinstance(cfg, KnnConfig):
        return fit_knn(train, cfg)
    if isinstance(cfg, SvmConfig):
        return fit_svm(train, cfg)
    raise TypeError(f"Unsupported model configuration: {type(cfg).__name__}")


def predict_codes(model: TrainedModel, rows: FeatureMatrix) -> np.ndarray:
    """Predictions as label codes (SZ = 1, HC = 0)."""
    SchemaValidator.same_columns(model.columns, rows.names)
    return model.predict_values(rows.values)


def predict(model: TrainedModel, rows: FeatureMatrix) -> List[Label]:
    return [Label(int(v)) for v in predict_codes(model, rows)]


def decision_function(model: SvmModel, rows: FeatureMatrix) -> np.ndarray:
    """f(x) = Σ α_i y_i K(x_i, x) + b for each row."""
    SchemaValidator.same_columns(model.columns, rows.names)
    return model.decision_values(rows.values)


# ---------- persistence ----------

def model_to_dict(model: TrainedModel) -> Dict[str, Any]:
    return {
        "format_version": MODEL_FORMAT_VERSION,
        "kind": model.kind,
        "config": model.config.model_dump(mode="json"),
        "columns": list(model.columns),
        "params": model.params_to_dict(),
    }


def model_from_dict(data: Dict[str, Any]) -> TrainedModel:
    if data.get("format_version") != MODEL_FORMAT_VERSION:
        raise ModelFormatError(f"Unsupported model format version {data.get('format_version')!r}")
    kind = data.get("kind")
    if kind not in _MODEL_CLASSES:
        raise ModelFormatError(f"Unknown model kind {kind!r}")
    try:
        config = parse_model_config(data["config"])
        return _MODEL_CLASSES[kind].from_params(config, tuple(data["columns"]), data["params"])
    except (KeyError, TypeError, ValueError, ValidationError) as e:
        raise ModelFormatError(f"Malformed {kind} model document: {e}")


def save_model(model: TrainedModel, path, run_id: Optional[str] = None) -> Path:
    """Write the model document; run_id, when given, is stored beside it and ignored on load."""
    document = model_to_dict(model)
    if run_id is not None:
        document["run_id"] = run_id
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return p


def load_model(path) -> TrainedModel:
    p = SchemaValidator.require_file(path)
    try:
        data = json.loads(p.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ModelFormatError(f"{p}: not a JSON document ({e})")
    return model_from_dict(data)
