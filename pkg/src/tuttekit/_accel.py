"""Numba switch.

Set ``TUTTEKIT_DISABLE_NUMBA=1`` to force the pure-numpy kernels.  The flag is
read once at import time.
"""
from __future__ import annotations

import os

_FLAG = os.environ.get("TUTTEKIT_DISABLE_NUMBA", "").strip().lower()
DISABLED = _FLAG in {"1", "true", "yes", "on"}

try:
    import numba as _numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and not DISABLED

NUMBA_OPTS = dict(cache=True, nogil=True)


def njit(fn):
    """Compile ``fn`` with numba when available, else return it unchanged.

    The uncompiled function is only ever called when numba is missing; the
    dispatchers in :mod:`tuttekit.kernels` pick the numpy variant instead.
    """
    if not HAVE_NUMBA:
        return fn
    return _numba.njit(**NUMBA_OPTS)(fn)


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"
