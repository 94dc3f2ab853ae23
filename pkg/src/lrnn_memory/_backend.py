"""Kernel backend selection.

Every hot kernel in :mod:`lrnn_memory.kernels` exists twice: a loop-style
implementation compiled with numba, and a vectorized pure-numpy fallback.
The active backend is chosen once at import time:

* ``LRNN_BACKEND=numba``  require numba (raise if it cannot be imported)
* ``LRNN_BACKEND=numpy``  force the pure-numpy fallback
* unset                   use numba when importable, numpy otherwise

Both backends are deterministic run to run; they are *not* guaranteed to be
bit-identical to each other (summation orders differ), only equivalent to
tight floating-point tolerances covered by the test suite.
"""

import os

_requested = os.environ.get("LRNN_BACKEND", "").strip().lower()

if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(
        f"LRNN_BACKEND={_requested!r} is not recognized (use 'numba' or 'numpy')"
    )

if _requested == "numpy":
    NUMBA_ENABLED = False
    njit = None
else:
    try:
        from numba import njit  # noqa: F401

        NUMBA_ENABLED = True
    except ImportError:
        if _requested == "numba":
            raise
        NUMBA_ENABLED = False
        njit = None

BACKEND = "numba" if NUMBA_ENABLED else "numpy"


def active_backend() -> str:
    """Name of the kernel backend selected at import time."""
    return BACKEND
