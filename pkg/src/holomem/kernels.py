"""Kernel dispatch.

The compiled extension is used when it was built; otherwise the numpy
fallback. Set ``HOLOMEM_PURE_PYTHON=1`` to force the fallback.
"""

import os

import numpy as np

from . import _fallback

if os.environ.get("HOLOMEM_PURE_PYTHON") == "1":
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
_impl = _compiled if _compiled is not None else _fallback


def oscillator_table(thetas, phis, selection, use_cos, ts, backend=None):
    """Raw oscillator products, one row per time step."""
    impl = _pick(backend)
    return impl.oscillator_table(
        np.ascontiguousarray(thetas, dtype=np.float64),
        np.ascontiguousarray(phis, dtype=np.float64),
        np.ascontiguousarray(selection, dtype=np.int64),
        np.ascontiguousarray(use_cos, dtype=np.uint8),
        np.ascontiguousarray(ts, dtype=np.float64),
    )


def fractional_spectrum(exponents, phases, backend=None):
    """Sum over terms of ``exp(i * exponent * phase)`` per frequency bin."""
    impl = _pick(backend)
    return impl.fractional_spectrum(
        np.ascontiguousarray(exponents, dtype=np.float64),
        np.ascontiguousarray(phases, dtype=np.float64),
    )


def _pick(backend):
    if backend is None:
        return _impl
    if backend == "python":
        return _fallback
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {backend!r}")
