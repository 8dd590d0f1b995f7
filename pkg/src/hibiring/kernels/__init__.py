"""Hot-kernel backend selection.

Two interchangeable implementations of the three inner-loop kernels exist:
``_numba`` (JIT-compiled, the default when numba imports cleanly) and
``_numpy`` (pure numpy fallback).  Selection:

* env var ``HIBI_BACKEND=numpy`` forces the fallback,
* ``HIBI_BACKEND=numba`` requires numba (raises if unavailable),
* unset or ``auto`` picks numba when available.

``benchmarks/backend_bench.py`` compares the two.
"""

from __future__ import annotations

import os

from ..limits import ENV_BACKEND
from . import _numpy

_active_name = ""
_active_mod = _numpy


def _load_numba_module():
    from . import _numba  # deferred: import triggers numba machinery

    return _numba


def use_backend(name: str | None = None) -> str:
    """Select the kernel backend; ``None`` re-reads the environment."""
    global _active_name, _active_mod
    if name is None:
        name = os.environ.get(ENV_BACKEND, "auto").strip().lower() or "auto"
    if name == "numpy":
        _active_mod, _active_name = _numpy, "numpy"
    elif name == "numba":
        _active_mod, _active_name = _load_numba_module(), "numba"
    elif name == "auto":
        try:
            _active_mod, _active_name = _load_numba_module(), "numba"
        except ImportError:
            _active_mod, _active_name = _numpy, "numpy"
    else:
        raise ValueError(f"unknown kernel backend {name!r} (expected numba/numpy/auto)")
    return _active_name


def active_backend() -> str:
    return _active_name


def enumerate_box(order, low, high, cov_indptr, cov_idx, n):
    return _active_mod.enumerate_box(order, low, high, cov_indptr, cov_idx, n)


def ud_reached_top(vals, rank, x0, top):
    return _active_mod.ud_reached_top(vals, rank, x0, top)


def pairwise_minimal(vals, cov_a, cov_b):
    return _active_mod.pairwise_minimal(vals, cov_a, cov_b)


use_backend()
