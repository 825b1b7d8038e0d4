"""Switch between numba-compiled kernels and the plain numpy/Python path.

Set ``POWERGRAPH_NUMBA=0`` to force the fallback (useful for debugging and
for the benchmark). Numba is also skipped silently if it cannot be imported.
"""

import os

_FLAG = os.environ.get("POWERGRAPH_NUMBA", "1").strip().lower()

try:
    import numba as _numba
except ImportError:  # pragma: no cover
    _numba = None

HAVE_NUMBA = _numba is not None
USE_NUMBA = HAVE_NUMBA and _FLAG not in ("0", "false", "no", "off")


def njit(func):
    """Compile ``func`` with numba if available; the original stays on ``.py_func``."""
    if not HAVE_NUMBA:
        func.py_func = func
        return func
    return _numba.njit(cache=True)(func)


def pick(compiled, fallback):
    return compiled if USE_NUMBA else fallback
