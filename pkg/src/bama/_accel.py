"""Optional numba acceleration.

Hot loops are written once in a numba-compatible subset of Python. When
numba is importable and ``BAMA_NO_JIT`` is unset (or ``0``), they are compiled
with ``njit``; otherwise the plain Python function is used and the callers
switch to their numpy-vectorized fallbacks where one exists.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

JIT_DISABLED = os.environ.get("BAMA_NO_JIT", "").strip() not in ("", "0")
HAVE_NUMBA = numba is not None and not JIT_DISABLED


def jit(fn):
    if HAVE_NUMBA:
        return numba.njit(cache=True, nogil=True)(fn)
    return fn


def py_func(fn):
    """Return the uncompiled Python function behind a (possibly) jitted kernel."""
    return getattr(fn, "py_func", fn)


def backend_name():
    return "numba" if HAVE_NUMBA else "numpy"
