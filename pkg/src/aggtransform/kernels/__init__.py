"""Min-plus / max-plus self-convolution closures.

``AGG_BACKEND=numpy`` forces the pure-numpy path; otherwise numba is used
when importable. ``AGG_THREADS`` sets the numba thread count for the ND
kernel (0 or unset means all threads numba was started with).
"""

import os

import numpy as np

from . import numpy_impl

try:
    import numba

    if "NUMBA_THREADING_LAYER_PRIORITY" not in os.environ:
        # skips the noisy TBB version probe on hosts with an old libtbb
        numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]
    from . import numba_impl
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    numba_impl = None

_requested = os.environ.get("AGG_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ImportError(f"AGG_BACKEND must be 'numba' or 'numpy', got {_requested!r}")
BACKEND = "numba" if (_requested == "numba" and numba_impl is not None) else "numpy"


def available_backends():
    return ("numpy", "numba") if numba_impl is not None else ("numpy",)


def _impl(backend):
    backend = backend or BACKEND
    if backend == "numba":
        if numba_impl is None:
            raise RuntimeError("numba is not installed")
        return numba_impl
    return numpy_impl


def thread_count():
    if numba is None:
        return 1
    limit = numba.config.NUMBA_NUM_THREADS
    want = int(os.environ.get("AGG_THREADS", "0") or 0)
    return limit if want <= 0 else min(want, limit)


def pair_visits(shape):
    """Number of (cell, part) pairs the closure examines on a lattice."""
    total = 1
    for m in shape:
        total *= m * (m + 1) // 2
    return total


def closure_1d(h, minimize, backend=None):
    h = np.ascontiguousarray(h, dtype=np.float64)
    return _impl(backend).closure_1d(h, bool(minimize))


def closure_nd(a, minimize, backend=None):
    a = np.ascontiguousarray(a, dtype=np.float64)
    impl = _impl(backend)
    if impl is numba_impl:
        numba.set_num_threads(thread_count())
    return impl.closure_nd(a, bool(minimize))
