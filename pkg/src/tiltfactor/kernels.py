"""Backend selection for the convolution kernel.

The compiled extension is used when importable; set
``TILTFACTOR_PURE_PYTHON=1`` to force the reference backend.  Inputs whose
partial sums could overflow 64 bits always go to the Python backend.
"""
from __future__ import annotations

import os

from tiltfactor import _pykernels

try:
    if os.environ.get("TILTFACTOR_PURE_PYTHON"):
        raise ImportError("pure Python backend requested")
    from tiltfactor import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

_INT64_SAFE = 1 << 62


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _ckernels is not None else [])


def convolve_dominant(rank, left, right, backend: str | None = None):
    """Dominant entries of the convolution of two full weight multisets."""
    backend = backend or BACKEND
    if backend == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernel not built")
        total = sum(abs(m) for _, m in left) * sum(abs(m) for _, m in right)
        bound = max((abs(c) for w, _ in left for c in w), default=0) + \
            max((abs(c) for w, _ in right for c in w), default=0)
        if total < _INT64_SAFE and bound < 1 << 20:
            return _ckernels.convolve_dominant(rank, left, right)
    return _pykernels.convolve_dominant(rank, left, right)
