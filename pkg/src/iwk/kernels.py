"""Kernel selection: compiled extension when importable, else pure Python.

Set ``IWK_PURE_PYTHON=1`` to force the fallback (the benchmark and the parity
tests use :func:`load` to get both explicitly).
"""
import os

from iwk import _kernels_py


def load(backend):
    if backend == "python":
        return _kernels_py
    if backend == "compiled":
        from iwk import _kernels
        return _kernels
    raise ValueError(f"unknown kernel backend {backend!r}")


def _select():
    if os.environ.get("IWK_PURE_PYTHON"):
        return "python", _kernels_py
    try:
        return "compiled", load("compiled")
    except ImportError:
        return "python", _kernels_py


BACKEND, _impl = _select()

series_mul = _impl.series_mul
poly_rem_monic = _impl.poly_rem_monic
det_bareiss = _impl.det_bareiss
