# =======================================================================================
# szclassify/services/classifiers/__init__.py - Classifiers Package
# =======================================================================================
from .distance import euclidean_distance, rbf_kernel
from .knn import KnnModel, fit_knn
from .svm import SvmModel, fit_svm
from .tree import Leaf, Split, TreeModel, fit_tree
from .trained import (
    TrainedModel, decision_function, fit_model, load_model, parse_model_config, predict,
    predict_codes, save_model,
)

__all__ = [
    "euclidean_distance", "rbf_kernel", "fit_tree", "fit_knn", "fit_svm", "fit_model",
    "predict", "predict_codes", "decision_function", "save_model", "load_model",
    "parse_model_config", "TrainedModel", "TreeModel", "KnnModel", "SvmModel", "Leaf", "Split",
]
