"""Optional numba acceleration.

Set ``LL_DISABLE_NUMBA=1`` to force the pure-numpy code paths.
"""
import os

_disabled = os.environ.get("LL_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _disabled:
        raise ImportError
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    numba = None
    HAVE_NUMBA = False


def use_numba():
    return HAVE_NUMBA


def njit(*args, **kwargs):
    """``numba.njit`` when available, identity decorator otherwise."""
    if HAVE_NUMBA:
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]
    return lambda fn: fn
