"""Optional numba acceleration.

Set ``DBSPECTRAL_DISABLE_NUMBA=1`` before import to force the pure-numpy
kernels, e.g. for debugging or when comparing both paths.
"""

import os

DISABLE_ENV = "DBSPECTRAL_DISABLE_NUMBA"

_disabled = os.environ.get(DISABLE_ENV, "").strip().lower() in {"1", "true", "yes", "on"}

try:
    from numba import njit as _njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - numba is optional
    _njit = None
    NUMBA_AVAILABLE = False

USE_NUMBA = NUMBA_AVAILABLE and not _disabled


def njit(func):
    """Compile ``func`` with numba when available; otherwise return ``None``.

    Callers keep the numpy fallback and pick whichever is active.
    """
    if not NUMBA_AVAILABLE:
        return None
    return _njit(cache=False, nogil=True)(func)
