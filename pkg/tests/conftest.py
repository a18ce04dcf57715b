# =======================================================================================
# tests/conftest.py - Shared Fixtures
# =======================================================================================
from pathlib import Path
from typing import List

import numpy as np
import pytest
from loguru import logger

from szclassify.models import FeatureMatrix, SynthConfig
from szclassify.services.ingestion import ingest, resolve_paths
from szclassify.services.synthetic import write_cohort


def make_blobs(n_per_class: int = 20, dims: int = 2, separation: float = 6.0, seed: int = 0) -> FeatureMatrix:
    """Two isotropic Gaussian blobs, SZ centred at +separation/2, HC at -separation/2."""
    rng = np.random.default_rng(seed)
    sz = rng.normal(separation / 2, 1.0, (n_per_class, dims))
    hc = rng.normal(-separation / 2, 1.0, (n_per_class, dims))
    labels = [1] * n_per_class + [0] * n_per_class
    return FeatureMatrix.from_arrays(np.vstack([sz, hc]), labels)


@pytest.fixture
def blobs() -> FeatureMatrix:
    return make_blobs()


@pytest.fixture
def small_cohort_config() -> SynthConfig:
    return SynthConfig(n_hc=12, n_sz=18, effect_size=3.0, seed=7)


@pytest.fixture
def cohort_dir(tmp_path: Path, small_cohort_config: SynthConfig) -> Path:
    """Directory holding a small, well-separated synthetic cohort."""
    out = tmp_path / "cohort"
    write_cohort(small_cohort_config, out)
    return out


@pytest.fixture
def cohort_matrix(cohort_dir: Path) -> FeatureMatrix:
    return ingest(resolve_paths(cohort_dir))


@pytest.fixture
def log_messages() -> List[str]:
    """Collects loguru records emitted during the test."""
    messages: List[str] = []
    handler_id = logger.add(lambda m: messages.append(m.record["level"].name + ": " + m.record["message"]), level="DEBUG")
    yield messages
    logger.remove(handler_id)
