"""Numba toggle.

Kernels in :mod:`zassenhaus.kernels` are written in the subset of Python that
numba compiles.  Set ``ZASSENHAUS_NUMBA=0`` in the environment to run them as
plain Python over numpy arrays instead (useful for debugging and for the
benchmark in ``benchmarks/``).
"""
from __future__ import annotations

import os

try:
    import numba
    _have_numba = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _have_numba = False

NUMBA_ENABLED = _have_numba and os.environ.get("ZASSENHAUS_NUMBA", "1").lower() not in (
    "0", "false", "no", "off")


def kernel(fn):
    """Compile ``fn`` with ``numba.njit`` when enabled, else return it unchanged."""
    if NUMBA_ENABLED:
        return numba.njit(cache=True)(fn)
    return fn
