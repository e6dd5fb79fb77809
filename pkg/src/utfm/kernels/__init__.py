"""Recursion kernel backend selection.

The compiled Cython kernels are preferred when the extension built; the
numpy implementation is a drop-in fallback. ``UTFM_KERNELS`` forces a
backend: ``auto`` (default), ``cython``, or ``numpy``. Both backends give
the same results up to floating-point rounding; within one process the
selection is fixed at import, so repeated runs are reproducible.
"""

from __future__ import annotations

import os

from ..errors import ConfigError
from . import numpy_backend

try:
    from . import _speedups
except ImportError:  # extension not built; numpy fallback
    _speedups = None


def _select(choice: str):
    if choice == "numpy":
        return numpy_backend
    if choice == "cython":
        if _speedups is None:
            raise ConfigError("UTFM_KERNELS=cython but the compiled extension is not available")
        return _speedups
    if choice == "auto":
        return _speedups if _speedups is not None else numpy_backend
    raise ConfigError(f"unknown UTFM_KERNELS value {choice!r} (use auto, cython, or numpy)")


_backend = _select(os.environ.get("UTFM_KERNELS", "auto").lower())

BACKEND_NAME: str = _backend.NAME
forward = _backend.forward
backward = _backend.backward
viterbi = _backend.viterbi


def available_backends() -> dict[str, object]:
    """Importable backends keyed by name (for tests and benchmarks)."""
    backends: dict[str, object] = {"numpy": numpy_backend}
    if _speedups is not None:
        backends["cython"] = _speedups
    return backends
