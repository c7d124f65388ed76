"""Numba/numpy backend selection.

Hot summation kernels have two implementations: a plain vectorized numpy one
and a numba-compiled scalar loop.  The active path is chosen once at import
time from the TWOCENTER_NUMBA environment variable:

    TWOCENTER_NUMBA=0   force the pure-numpy path
    TWOCENTER_NUMBA=1   require numba (ImportError if unavailable)
    unset / other       use numba when importable, numpy otherwise

``benchmarks/bench_kernels.py`` times both paths against each other.
"""

import os

_FLAG = os.environ.get("TWOCENTER_NUMBA", "").strip().lower()

if _FLAG in ("0", "off", "false", "no"):
    numba = None
elif _FLAG in ("1", "on", "true", "yes"):
    import numba
else:
    try:
        import numba
    except ImportError:
        numba = None

NUMBA_ENABLED = numba is not None


def maybe_njit(fn):
    """Compile fn with numba when the numba path is active, else return fn."""
    if NUMBA_ENABLED:
        return numba.njit(cache=True)(fn)
    return fn


def thread_count():
    """Worker cap for batch operations, from TWOCENTER_THREADS (default 1)."""
    raw = os.environ.get("TWOCENTER_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)
