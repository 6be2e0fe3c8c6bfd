"""Backend selection for the hot kernels.

Set ``NSCARTAN_NO_NUMBA=1`` to force the pure-numpy path. If numba cannot be
imported the numpy path is used as well.
"""
import os

_DISABLED = os.environ.get("NSCARTAN_NO_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if _DISABLED:
        raise ImportError("numba disabled by NSCARTAN_NO_NUMBA")
    from numba import njit as _njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False
    _njit = None


def njit(func):
    """``numba.njit(cache=True)`` when numba is usable, else the identity."""
    if _njit is None:
        return func
    return _njit(cache=True)(func)


def backend():
    return "numba" if HAVE_NUMBA else "numpy"
