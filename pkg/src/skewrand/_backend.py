"""Kernel backend selection.

Hot kernels are compiled with numba when it is importable. Setting
``SKEWRAND_NO_NUMBA=1`` forces the pure-numpy implementations, which is
useful for debugging and for the benchmark comparison.
"""
import os

_FLAG = os.environ.get("SKEWRAND_NO_NUMBA", "").strip().lower()

try:
    import numba
except ImportError:  # pragma: no cover - numba is a hard dependency in CI
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and _FLAG not in ("1", "true", "yes", "on")


def njit(*args, **kwargs):
    """``numba.njit`` when available, otherwise the identity decorator."""
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda fn: fn


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"
