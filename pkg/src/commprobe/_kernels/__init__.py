"""Kernel backend selection: compiled extension with a pure NumPy fallback.

Set ``COMMPROBE_PURE_PYTHON=1`` to force the fallback even when the compiled
extension is available.
"""
from __future__ import annotations

import os

_forced = os.environ.get("COMMPROBE_PURE_PYTHON", "").strip()
if _forced not in ("", "0"):
    from . import pykernels as kernels
else:
    try:
        from commprobe import _ckernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import pykernels as kernels


def backend_name() -> str:
    """Name of the active kernel backend."""
    return kernels.BACKEND_NAME
