"""Kernel backend selection.

The compiled extension is used when it imports; otherwise (or when
``GIRTHLAB_PURE=1`` is set) the interpreted kernels are used. Both expose
the same functions with identical results.
"""
from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("GIRTHLAB_PURE", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND
shortest_cycle = _impl.shortest_cycle
fas_dp = _impl.fas_dp
edge_counts = _impl.edge_counts
vertex_triangles = _impl.vertex_triangles


def compiled():
    """The compiled kernel module, or ``None`` if it is not built."""
    try:
        from . import _kernels
    except ImportError:
        return None
    return _kernels
