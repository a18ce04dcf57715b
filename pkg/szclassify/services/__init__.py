# =======================================================================================
# szclassify/services/__init__.py - Services Package
# =======================================================================================
from .ablation import run_entropy_incremental, run_leave_one_out
from .entropy import column_entropy, entropy, rank_features
from .evaluation import evaluate, split
from .ingestion import check_inputs, drop_columns, ingest, load_table, merge, select_group
from .preprocessing import apply_standardizer, discretize, discretize_column, fit_standardizer
from .synthetic import bayes_accuracy, generate, write_cohort

__all__ = [
    "load_table", "merge", "select_group", "drop_columns", "ingest", "check_inputs",
    "fit_standardizer", "apply_standardizer", "discretize", "discretize_column",
    "entropy", "column_entropy", "rank_features",
    "split", "evaluate", "run_leave_one_out", "run_entropy_incremental",
    "generate", "bayes_accuracy", "write_cohort",
]
