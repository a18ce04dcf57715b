# =======================================================================================
# szclassify/services/evaluation.py - Splitting Protocols and Cross-Validation
# =======================================================================================
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np
from loguru import logger

from ..models.dataset import FeatureMatrix
from ..models.enums import SchemeKind, SplitMode
from ..models.schemas import EvalResult, SplitPolicy
from ..utils.exceptions import InfeasibleStratification, SingleClass, TooFewRows
from ..workers.parallel import ordered_map
from .classifiers.trained import fit_model, predict_codes

Fold = Tuple[np.ndarray, np.ndarray]


def _units(m: FeatureMatrix, mode: SplitMode) -> Tuple[List[np.ndarray], np.ndarray]:
    """Row groups that must stay together, and the label of each group."""
    if mode is SplitMode.TRIAL_LEVEL:
        return [np.array([i]) for i in range(m.n_rows)], m.labels.astype(np.int64)

    groups = {}
    for i, subject in enumerate(m.subject_ids):
        groups.setdefault(subject, []).append(i)
    units = [np.asarray(rows) for rows in groups.values()]
    return units, np.array([int(m.labels[rows[0]]) for rows in units], dtype=np.int64)


def _ordered_by_class(unit_labels: np.ndarray, rng: np.random.Generator, stratified: bool) -> np.ndarray:
    """Units shuffled; with stratification, one class block after the other."""
    if not stratified:
        return rng.permutation(len(unit_labels))
    blocks = [rng.permutation(np.flatnonzero(unit_labels == c)) for c in (1, 0)]
    return np.concatenate(blocks)


def _rows(units: List[np.ndarray], chosen: np.ndarray) -> np.ndarray:
    if len(chosen) == 0:
        return np.array([], dtype=np.intp)
    return np.sort(np.concatenate([units[u] for u in chosen])).astype(np.intp)


def split(m: FeatureMatrix, policy: SplitPolicy) -> List[Fold]:
    """(train rows, test rows) per fold, deterministic given the policy seed."""
    if m.n_rows == 0:
        raise TooFewRows("Cannot split an empty matrix")
    if np.unique(m.labels).size < 2:
        raise SingleClass("Both SZ and HC rows are required to split")

    if policy.scheme is SchemeKind.RESUBSTITUTION:
        everything = np.arange(m.n_rows, dtype=np.intp)
        return [(everything, everything)]

    units, unit_labels = _units(m, policy.mode)
    needed = policy.folds if policy.scheme is SchemeKind.KFOLD else 2
    if len(units) < needed:
        if policy.mode is SplitMode.SUBJECT_LEVEL:
            raise InfeasibleStratification(
                f"{len(units)} subject(s) cannot fill {policy.describe()} at subject level"
            )
        raise TooFewRows(f"{m.n_rows} row(s) cannot fill {policy.describe()}")

    rng = np.random.default_rng(policy.seed)
    all_units = np.arange(len(units))

    if policy.scheme is SchemeKind.KFOLD:
        order = _ordered_by_class(unit_labels, rng, policy.stratified)
        fold_of = np.empty(len(units), dtype=np.int64)
        fold_of[order] = np.arange(len(units)) % policy.folds
        return [
            (_rows(units, all_units[fold_of != f]), _rows(units, all_units[fold_of == f]))
            for f in range(policy.folds)
        ]

    # holdout, stratified per class
    test_units = []
    for c in (1, 0):
        members = rng.permutation(np.flatnonzero(unit_labels == c))
        n_test = int(np.floor(policy.test_fraction * len(members) + 0.5))
        test_units.extend(members[:n_test].tolist())
    is_test = np.isin(all_units, test_units)
    if is_test.all() or not is_test.any():
        raise InfeasibleStratification(
            f"Holdout fraction {policy.test_fraction} leaves an empty train or test side"
        )
    return [(_rows(units, all_units[~is_test]), _rows(units, all_units[is_test]))]


@dataclass(frozen=True)
class FoldOutcome:
    accuracy: float
    n_train: int
    n_test: int
    tp: int
    tn: int
    fp: int
    fn: int


def _run_fold(m: FeatureMatrix, model_cfg, fold: Fold) -> FoldOutcome:
    train_rows, test_rows = fold
    model = fit_model(m.take_rows(train_rows), model_cfg)
    predicted = predict_codes(model, m.take_rows(test_rows)).astype(np.int64)
    actual = m.labels[test_rows].astype(np.int64)
    return FoldOutcome(
        accuracy=float(np.mean(predicted == actual)),
        n_train=len(train_rows),
        n_test=len(test_rows),
        tp=int(np.sum((predicted == 1) & (actual == 1))),
        tn=int(np.sum((predicted == 0) & (actual == 0))),
        fp=int(np.sum((predicted == 1) & (actual == 0))),
        fn=int(np.sum((predicted == 0) & (actual == 1))),
    )


def evaluate(
    m: FeatureMatrix,
    model_cfg,
    policy: SplitPolicy,
    group: Optional[str] = None,
    n_jobs: Optional[int] = None,
) -> EvalResult:
    """Fit on each training fold, score on its test fold, average the fold accuracies."""
    folds = split(m, policy)
    outcomes = ordered_map(lambda fold: _run_fold(m, model_cfg, fold), folds, n_jobs)
    for f, o in enumerate(outcomes):
        logger.debug(f"fold {f}: accuracy {o.accuracy:.4f} (train {o.n_train}, test {o.n_test})")

    per_fold = [o.accuracy for o in outcomes]
    return EvalResult(
        accuracy=float(np.mean(per_fold)),
        per_fold=per_fold,
        n_train=[o.n_train for o in outcomes],
        n_test=[o.n_test for o in outcomes],
        tp=sum(o.tp for o in outcomes),
        tn=sum(o.tn for o in outcomes),
        fp=sum(o.fp for o in outcomes),
        fn=sum(o.fn for o in outcomes),
        model=model_cfg.model_dump(mode="json"),
        policy=policy,
        group=group,
        n_features=m.n_cols,
    )
