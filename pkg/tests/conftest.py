import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import mpmath
import pytest


@pytest.fixture(autouse=True)
def _high_precision():
    # Expected values in tests are computed at the package's working precision.
    with mpmath.workdps(80):
        yield
