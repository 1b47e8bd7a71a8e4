"""Evaluation kernels: compiled Cython core with a pure-NumPy fallback.

The compiled module is preferred when importable; set the environment
variable ``HULLMAPS_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _evalnp

_impl = None
BACKEND = "numpy"
if not os.environ.get("HULLMAPS_PURE_PYTHON"):
    try:
        from . import _evalcore as _impl

        BACKEND = "compiled"
    except ImportError:
        _impl = None
if _impl is None:
    _impl = _evalnp


def eval_batch(points, pair_dirs, eps, dirs):
    """Dispatch to the active backend; see the backend modules for semantics."""
    return _impl.eval_batch(points, pair_dirs, eps, dirs)


def backend_name() -> str:
    return BACKEND


def available_backends() -> dict:
    """Importable backends by name (used by the benchmark)."""
    out = {"numpy": _evalnp}
    try:
        from . import _evalcore

        out["compiled"] = _evalcore
    except ImportError:
        pass
    return out
