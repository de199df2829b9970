"""Kernel selection.

The compiled kernel is used when it was built and ``DOUBLECOVER_PURE_PYTHON``
is unset or ``0``. Inputs outside int64, or int64 overflow during
elimination, fall back to the pure-Python kernel automatically.
"""

import os

from . import _pykernels

_INT64_SAFE = 1 << 62

try:
    if os.environ.get("DOUBLECOVER_PURE_PYTHON", "0") not in ("", "0"):
        raise ImportError("pure-Python kernel forced by environment")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"


def _fits(data):
    for row in data:
        for v in row:
            if not -_INT64_SAFE < v < _INT64_SAFE:
                return False
    return True


def snf_kernel(data, m, n, certificates=False):
    if _ckernels is not None and _fits(data):
        try:
            return _ckernels.snf(data, m, n, certificates)
        except OverflowError:
            pass
    return _pykernels.snf(data, m, n, certificates)
