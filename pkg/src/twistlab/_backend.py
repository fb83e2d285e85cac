"""Pick the relation search kernel at import time.

The compiled extension is used when it was built; ``TWISTLAB_PURE_PYTHON=1``
forces the fallback.  Searches whose matrices do not fit int64 always run
on the Python kernel.
"""

import os

from . import _kernels_py

INT64_LIMIT = 2**62

try:
    if os.environ.get("TWISTLAB_PURE_PYTHON") == "1":
        raise ImportError("pure Python requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def available():
    return ["python"] + (["cython"] if _compiled is not None else [])


def bfs_relation(mats, depth, max_nodes, backend=None):
    """Dispatch to the requested or default kernel, falling back on overflow."""
    backend = backend or BACKEND
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel not built")
        if all(abs(x) < INT64_LIMIT for m in mats for x in m):
            import numpy as np

            arr = np.ascontiguousarray(np.array(mats, dtype=np.int64).reshape(-1, 4))
            res = _compiled.bfs_relation(arr, depth, max_nodes)
            if res[0] != _kernels_py.OVERFLOW:
                return res
    elif backend != "python":
        raise ValueError(f"unknown backend {backend!r}")
    return _kernels_py.bfs_relation(mats, depth, max_nodes)
