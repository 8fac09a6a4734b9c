"""Backend selection for the hot kernels.

The compiled ``_speedups`` extension is used when it imports; otherwise the
pure-Python module takes over.  Set ``THICKLAB_PURE=1`` to force the fallback.
"""

import os

from . import _purepy

if os.environ.get("THICKLAB_PURE") == "1":
    _impl = _purepy
    BACKEND = "python"
else:
    try:
        from . import _speedups as _impl

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        _impl = _purepy
        BACKEND = "python"


def least_failing_rectangle(rowmasks, ncols, mu, nu):
    if BACKEND == "cython" and ncols > 64:
        return _purepy.least_failing_rectangle(rowmasks, ncols, mu, nu)
    return _impl.least_failing_rectangle(rowmasks, ncols, mu, nu)


def search_partition(m, mu, nu, p, budget):
    return _impl.search_partition(m, mu, nu, p, budget)
