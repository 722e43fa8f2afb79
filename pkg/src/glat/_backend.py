"""Select the integer kernel implementation at import time.

The compiled extension ``glat._core`` works in checked int64 arithmetic and
raises ``OverflowError`` when an intermediate value leaves that range; the
wrappers below then redo the computation with the arbitrary-precision
pure-Python kernels.  Set ``GLAT_PURE_PYTHON=1`` to skip the extension.
"""

import os

from . import _pykernels

_core = None
if not os.environ.get("GLAT_PURE_PYTHON"):
    try:
        from . import _core
    except ImportError:  # extension not built
        _core = None

BACKEND = "cython" if _core is not None else "python"


def _dispatch(name, *args):
    if _core is not None:
        try:
            return getattr(_core, name)(*args)
        except OverflowError:
            pass
    return getattr(_pykernels, name)(*args)


def hnf(rows, ncols):
    return _dispatch("hnf", rows, ncols)


def kernel(rows, ncols):
    return _dispatch("kernel", rows, ncols)


def snf(rows, nrows, ncols):
    return _dispatch("snf", rows, nrows, ncols)


def cocycle_kernel(actions, table, members, rank):
    return _dispatch("cocycle_kernel", actions, table, members, rank)
