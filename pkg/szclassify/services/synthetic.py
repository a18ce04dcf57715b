# =======================================================================================
# szclassify/services/synthetic.py - Synthetic Two-Class Cohorts
# =======================================================================================
import json
import math
from pathlib import Path
from typing import Dict, Optional, Tuple, Union

import numpy as np
import pandas as pd
from loguru import logger
from pydantic import ValidationError
from scipy.stats import norm

from ..models.enums import (
    CANONICAL_FILES, DEMOGRAPHIC_COLUMNS, Electrode, ErpComponent, GROUP_COLUMN,
    Label, RAW_ELECTRODE_COLUMNS, REQUIRED_HEADERS, SUBJECT_COLUMN, TIMING_COLUMNS, TableKind,
    erp_column,
)
from ..models.schemas import SynthConfig
from ..utils.exceptions import InvalidConfig

FLOAT_FORMAT = "%.6f"
MANIFEST_FILE = "synth_manifest.json"

# class-independent means (µV for ERP components and raw electrodes, ms for timing)
COMPONENT_MEANS: Dict[ErpComponent, float] = {
    ErpComponent.B0: 0.0,
    ErpComponent.N100: -5.0,
    ErpComponent.P200: 4.0,
    ErpComponent.B1: 0.0,
}
ERP_SIGMA = 2.0
RAW_MEAN, RAW_SIGMA = 0.0, 10.0
TIMING_MEANS = {"ITI": 1000.0, "time_ms": 100.0}
TIMING_SIGMA = 20.0


def _coerce(cfg: Union[SynthConfig, dict]) -> SynthConfig:
    if isinstance(cfg, SynthConfig):
        return cfg
    try:
        return SynthConfig.model_validate(cfg)
    except ValidationError as e:
        raise InvalidConfig(f"Invalid synthetic cohort configuration: {e}")


def informative_names(cfg: SynthConfig) -> Tuple[str, ...]:
    """Columns whose class means differ, in canonical order."""
    names = [erp_column(e, ErpComponent.N100) for e in list(Electrode)[: cfg.informative_columns]]
    if cfg.noise_dims_informative:
        names += list(RAW_ELECTRODE_COLUMNS)
    return tuple(names)


def _subjects(cfg: SynthConfig):
    """(subject id, label) for every subject, SZ first."""
    width = len(str(cfg.n_sz + cfg.n_hc))
    labels = [Label.SZ] * cfg.n_sz + [Label.HC] * cfg.n_hc
    return [(f"S{i + 1:0{width}d}", label) for i, label in enumerate(labels)]


def generate(cfg: Union[SynthConfig, dict]) -> Tuple[pd.DataFrame, pd.DataFrame, pd.DataFrame]:
    """(erp, eeg, demographics) frames in the canonical CSV layouts.

    Every observation row is drawn independently from its class-conditional
    Gaussian. HC rows get N100 amplitudes raised by effect_size·σ on the
    informative electrodes (suppressed negativity); everything else, including
    demographics, ignores the class.
    """
    cfg = _coerce(cfg)
    rng = np.random.default_rng(cfg.seed)
    subjects = _subjects(cfg)
    n_obs = len(subjects) * cfg.trials_per_subject

    obs_subject = [s for s, _ in subjects for _ in range(cfg.trials_per_subject)]
    obs_label = np.array([int(l) for _, l in subjects for _ in range(cfg.trials_per_subject)])
    is_hc = obs_label == int(Label.HC)
    obs_group = np.where(is_hc, Label.HC.name, Label.SZ.name)
    shifted = set(informative_names(cfg))

    erp = pd.DataFrame({SUBJECT_COLUMN: obs_subject, GROUP_COLUMN: obs_group})
    for name in TIMING_COLUMNS:
        erp[name] = rng.normal(TIMING_MEANS[name], TIMING_SIGMA, n_obs)
    for e in Electrode:
        for c in ErpComponent:
            name = erp_column(e, c)
            values = rng.normal(COMPONENT_MEANS[c], ERP_SIGMA, n_obs)
            if name in shifted:
                values = values + is_hc * cfg.effect_size * ERP_SIGMA
            erp[name] = values

    eeg = pd.DataFrame({SUBJECT_COLUMN: obs_subject, GROUP_COLUMN: obs_group})
    for name in RAW_ELECTRODE_COLUMNS:
        values = rng.normal(RAW_MEAN, RAW_SIGMA, n_obs)
        if name in shifted:
            values = values + is_hc * cfg.effect_size * RAW_SIGMA
        eeg[name] = values

    n_subjects = len(subjects)
    demo = pd.DataFrame({
        SUBJECT_COLUMN: [s for s, _ in subjects],
        "age": rng.integers(18, 66, n_subjects),
        "gender": np.where(rng.integers(0, 2, n_subjects) == 1, "female", "male"),
        "education": rng.integers(8, 21, n_subjects),
        GROUP_COLUMN: [l.name for _, l in subjects],
    })

    return (
        erp[list(REQUIRED_HEADERS[TableKind.ERP_AVERAGES])],
        eeg[list(REQUIRED_HEADERS[TableKind.EEG_TRIALS])],
        demo[[SUBJECT_COLUMN, *DEMOGRAPHIC_COLUMNS, GROUP_COLUMN]],
    )


def separation(cfg: Union[SynthConfig, dict]) -> float:
    """Mahalanobis distance between the class means of one observation row."""
    cfg = _coerce(cfg)
    return cfg.effect_size * math.sqrt(len(informative_names(cfg)))


def bayes_accuracy(cfg: Union[SynthConfig, dict]) -> float:
    """Optimal accuracy for two unit-covariance Gaussians with unequal priors."""
    cfg = _coerce(cfg)
    p_sz = cfg.n_sz / (cfg.n_sz + cfg.n_hc)
    p_hc = 1.0 - p_sz
    delta = separation(cfg)
    if delta == 0:
        return max(p_sz, p_hc)
    if math.isinf(delta):
        return 1.0
    shift = math.log(p_sz / p_hc) / delta
    return float(p_sz * norm.cdf(delta / 2 + shift) + p_hc * norm.cdf(delta / 2 - shift))


def write_cohort(cfg: Union[SynthConfig, dict], out_dir, run_id: Optional[str] = None) -> Dict[str, Path]:
    """Write the three canonical CSVs and a manifest; returns name → path."""
    cfg = _coerce(cfg)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    erp, eeg, demo = generate(cfg)

    written: Dict[str, Path] = {}
    for kind, frame in ((TableKind.DEMOGRAPHICS, demo), (TableKind.ERP_AVERAGES, erp), (TableKind.EEG_TRIALS, eeg)):
        path = out / CANONICAL_FILES[kind]
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        written[path.name] = path

    manifest = {
        "config": cfg.model_dump(mode="json"),
        "bayes_accuracy": bayes_accuracy(cfg),
        "separation": separation(cfg),
        "informative_columns": list(informative_names(cfg)),
        "rows": {"erp": len(erp), "eeg": len(eeg), "demographics": len(demo)},
    }
    if run_id is not None:
        manifest["run_id"] = run_id
    path = out / MANIFEST_FILE
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    written[path.name] = path

    logger.info(
        f"Synthetic cohort: {cfg.n_sz} SZ + {cfg.n_hc} HC subjects, "
        f"{len(eeg)} observation rows, Bayes accuracy {manifest['bayes_accuracy']:.4f} -> {out}"
    )
    return written
