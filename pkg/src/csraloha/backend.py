"""Kernel backend selection: numba-compiled or pure numpy.

Set CSRALOHA_BACKEND=numpy to force the pure-numpy fallback path,
CSRALOHA_BACKEND=numba to require numba (ImportError if missing).
Default ("auto") uses numba when importable.

Both backends execute the same source functions; the numba path wraps
them with @njit(cache=True, nogil=True) so the Monte Carlo harness can
run frame chunks on real threads.
"""

import os

_choice = os.environ.get("CSRALOHA_BACKEND", "auto").strip().lower()
if _choice not in {"auto", "numba", "numpy"}:
    raise ValueError(f"CSRALOHA_BACKEND must be auto|numba|numpy, got {_choice!r}")

USING_NUMBA = False
if _choice in ("auto", "numba"):
    try:
        from numba import njit as _njit

        USING_NUMBA = True
    except ImportError:
        if _choice == "numba":
            raise

BACKEND = "numba" if USING_NUMBA else "numpy"


def jit(func):
    """Compile `func` with numba when the numba backend is active."""
    if USING_NUMBA:
        return _njit(cache=True, nogil=True)(func)
    return func
