"""Selects the elimination kernels: compiled if importable, else pure Python.

Set ``MULTIPATH_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _kernels_py

if os.environ.get("MULTIPATH_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "compiled"
COMPILED = BACKEND == "compiled"

rank_mod_p = _impl.rank_mod_p
rank_integer = _kernels_py.rank_integer
