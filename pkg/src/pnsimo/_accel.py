"""Numba switch.

Set ``PNSIMO_DISABLE_NUMBA=1`` before import to run the pure-numpy kernels.
"""

import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

_DISABLED = os.environ.get("PNSIMO_DISABLE_NUMBA", "0").strip().lower() in ("1", "true", "yes")

USE_NUMBA = numba is not None and not _DISABLED


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
