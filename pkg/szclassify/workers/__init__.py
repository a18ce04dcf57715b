# =======================================================================================
# szclassify/workers/__init__.py - Workers Package
# =======================================================================================
from .parallel import ordered_map

__all__ = ["ordered_map"]
