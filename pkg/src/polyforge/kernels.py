"""Kernel selection: compiled extension if importable, else pure Python.

Set ``POLYFORGE_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _fallback

if os.environ.get("POLYFORGE_PURE_PYTHON"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"

extend_flag_map = _impl.extend_flag_map
union_perm = _impl.union_perm
resolve = _impl.resolve
