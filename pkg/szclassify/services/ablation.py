# =======================================================================================
# szclassify/services/ablation.py - Feature Ablation Experiments
# =======================================================================================
from typing import Optional

from loguru import logger

from ..models.dataset import FeatureMatrix
from ..models.enums import AblationMode
from ..models.schemas import AblationRecord, AblationReport, BinningConfig, SplitPolicy
from ..utils.exceptions import TooFewRows
from ..workers.parallel import ordered_map
from .entropy import rank_features
from .evaluation import evaluate
from .ingestion import drop_columns


def _require_features(m: FeatureMatrix) -> None:
    if m.n_cols < 2:
        raise TooFewRows(f"Ablation needs at least 2 feature columns, got {m.n_cols}")


def run_leave_one_out(
    m: FeatureMatrix,
    model_cfg,
    policy: SplitPolicy,
    n_jobs: Optional[int] = None,
) -> AblationReport:
    """Drop each feature in turn (the others stay) and re-evaluate with the same folds."""
    _require_features(m)
    baseline = evaluate(m, model_cfg, policy, n_jobs=n_jobs).accuracy
    logger.info(f"leave-one-out baseline accuracy {baseline:.4f} over {m.n_cols} features")

    def step(name: str) -> float:
        return evaluate(drop_columns(m, [name]), model_cfg, policy, n_jobs=1).accuracy

    accuracies = ordered_map(step, list(m.names), n_jobs)
    records = []
    for i, (name, accuracy) in enumerate(zip(m.names, accuracies), start=1):
        logger.info(f"step {i}: without {name} -> {accuracy:.4f}")
        records.append(AblationRecord(step=i, removed=name, remaining_count=m.n_cols - 1, accuracy=accuracy))

    return AblationReport(
        mode=AblationMode.LEAVE_ONE_OUT,
        baseline_accuracy=baseline,
        feature_count=m.n_cols,
        records=records,
        model=model_cfg.model_dump(mode="json"),
        policy=policy,
    )


def run_entropy_incremental(
    m: FeatureMatrix,
    model_cfg,
    policy: SplitPolicy,
    bins: BinningConfig,
    n_jobs: Optional[int] = None,
) -> AblationReport:
    """Remove features cumulatively, highest entropy first, until one is left.

    The ranking is computed once on the full matrix before any split.
    """
    _require_features(m)
    ranking = rank_features(m, bins)
    baseline = evaluate(m, model_cfg, policy, n_jobs=n_jobs).accuracy
    logger.info(f"entropy-incremental baseline accuracy {baseline:.4f} over {m.n_cols} features")

    records = []
    current = m
    for i, name in enumerate(ranking.names[:-1], start=1):
        current = drop_columns(current, [name])
        accuracy = evaluate(current, model_cfg, policy, n_jobs=n_jobs).accuracy
        logger.info(f"step {i}: removed {name}, {current.n_cols} left -> {accuracy:.4f}")
        records.append(AblationRecord(step=i, removed=name, remaining_count=current.n_cols, accuracy=accuracy))

    return AblationReport(
        mode=AblationMode.ENTROPY_INCREMENTAL,
        baseline_accuracy=baseline,
        feature_count=m.n_cols,
        records=records,
        model=model_cfg.model_dump(mode="json"),
        policy=policy,
        binning=bins,
        ranking=ranking,
    )
