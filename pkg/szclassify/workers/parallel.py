# =======================================================================================
# szclassify/workers/parallel.py - Ordered Parallel Map
# =======================================================================================
from typing import Callable, List, Optional, Sequence, TypeVar

from joblib import Parallel, delayed

from ..config import config

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Sequence[T], n_jobs: Optional[int] = None) -> List[R]:
    """Apply fn to every item, results in item order whatever the completion order.

    Runs inline for a single job, otherwise on joblib worker threads.
    """
    jobs = config.N_JOBS if n_jobs is None else n_jobs
    if jobs == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    return Parallel(n_jobs=jobs, prefer="threads")(delayed(fn)(item) for item in items)
