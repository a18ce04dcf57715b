# =======================================================================================
# szclassify/config.py - Configuration Management
# =======================================================================================

import os
from typing import Optional
from dotenv import load_dotenv

load_dotenv()

def _env_int(name: str) -> Optional[int]:
    """Helper to parse integer environment variables."""
    v = os.getenv(name)
    return int(v) if v and v.lstrip("-").isdigit() else None

class Config:
    # Reproducibility
    SEED: int = int(os.getenv("SZC_SEED", "42"))
    SOURCE_DATE_EPOCH: Optional[int] = _env_int("SOURCE_DATE_EPOCH")

    # Experiment defaults
    BINS: int = int(os.getenv("SZC_BINS", "10"))
    FOLDS: int = int(os.getenv("SZC_FOLDS", "10"))
    N_JOBS: int = int(os.getenv("SZC_N_JOBS", "1"))

    # Output
    OUT_DIR: str = os.getenv("SZC_OUT_DIR", "results")

    # Logging
    DEBUG: bool = os.getenv("SZC_DEBUG", "false").lower() == "true"
    LOG_LEVEL: str = "DEBUG" if DEBUG else os.getenv("SZC_LOG_LEVEL", "INFO").upper()

config = Config()
