"""Kernel backend selection.

The compiled extension (ggibandit._ckernels) is preferred when importable;
ggibandit._pykernels is the pure-Python drop-in.  Both compute identical
results; the extension is much faster on long simulations.  Set the
environment variable GGIBANDIT_BACKEND to "pure" or "compiled" to force a
choice (forcing "compiled" raises if the extension is missing).
"""

from __future__ import annotations

import os

from . import _pykernels

_FORCED = os.environ.get("GGIBANDIT_BACKEND", "").strip().lower()

if _FORCED == "pure":
    kernels = _pykernels
    BACKEND = "pure"
elif _FORCED == "compiled":
    from . import _ckernels as kernels  # noqa: F401

    BACKEND = "compiled"
else:
    try:
        from . import _ckernels as kernels  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        kernels = _pykernels
        BACKEND = "pure"


def get_kernels(backend: str = "auto"):
    """Return the kernels module for an explicit backend request."""
    if backend == "auto":
        return kernels
    if backend == "pure":
        return _pykernels
    if backend == "compiled":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown backend {backend!r} (use auto/pure/compiled)")
