# =======================================================================================
# szclassify/__main__.py - `python -m szclassify`
# =======================================================================================
import sys

from .main import main

sys.exit(main())
