"""Kernel backend selection.

Hot inner loops (orbit enumeration, segment-pair linking sums, kernel
quadratures) exist in two implementations: numba ``@njit`` kernels and
pure-numpy fallbacks.  The active backend is chosen once at import time
from the environment variable ``HELILINK_BACKEND``:

* ``numba`` (default when numba imports): compiled kernels,
* ``numpy``: vectorized/plain-python fallbacks, no numba import at all.

``benchmarks/bench_backends.py`` compares the two.
"""

import os

_requested = os.environ.get("HELILINK_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ValueError(
        f"HELILINK_BACKEND must be 'numba' or 'numpy', got {_requested!r}"
    )

USE_NUMBA = _requested != "numpy"

if USE_NUMBA:
    # Allow logical thread counts above the core count so reproducibility
    # runs at --threads 1/4/8 work on any machine.
    os.environ.setdefault("NUMBA_NUM_THREADS", str(max(8, os.cpu_count() or 1)))
    try:
        import numba
        from numba import njit, prange
    except ImportError:
        USE_NUMBA = False

if not USE_NUMBA:
    numba = None

    def njit(*args, **kwargs):  # pragma: no cover - placeholder, never hot
        def wrap(f):
            return f

        if args and callable(args[0]):
            return args[0]
        return wrap

    prange = range

BACKEND = "numba" if USE_NUMBA else "numpy"


def set_threads(n: int) -> int:
    """Set the kernel thread count; returns the count actually applied.

    A no-op (returning 1) on the numpy backend.  Results are independent of
    the thread count by construction: parallel kernels write per-row partial
    results and reduce them in a fixed sequential order.
    """
    if not USE_NUMBA:
        return 1
    n = max(1, int(n))
    limit = numba.config.NUMBA_NUM_THREADS
    n = min(n, limit)
    numba.set_num_threads(n)
    return n
