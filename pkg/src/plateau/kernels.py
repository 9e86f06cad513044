"""Backend selection for the hot loops.

The compiled extension ``plateau._ckernels`` is used when it imports;
otherwise, or when ``PLATEAU_PURE_PYTHON=1`` is set, the pure-Python
module ``plateau._pykernels`` takes over.  Both expose the same three
functions and produce identical results.
"""

from __future__ import annotations

import os
from types import ModuleType

import numpy as np

from . import _pykernels

_compiled: ModuleType | None
try:
    from . import _ckernels as _compiled
except ImportError:  # extension not built
    _compiled = None

INT64_MAX = _pykernels.INT64_MAX

if _compiled is not None and not os.environ.get("PLATEAU_PURE_PYTHON"):
    _impl: ModuleType = _compiled
    BACKEND = "cython"
else:
    _impl = _pykernels
    BACKEND = "python"


def available_backends() -> list[str]:
    names = ["python"]
    if _compiled is not None:
        names.insert(0, "cython")
    return names


def get_backend(name: str) -> ModuleType:
    if name == "python":
        return _pykernels
    if name == "cython":
        if _compiled is None:
            raise ImportError("compiled kernels are not built")
        return _compiled
    raise ValueError(f"unknown backend {name!r}")


def wht(values, backend: ModuleType | None = None) -> np.ndarray:
    """Unnormalised Walsh-Hadamard butterfly of an integer vector.

    Returns a fresh int64 array.  Inputs whose magnitude could overflow
    int64 during the butterfly are handled with Python integers and come
    back as an object array.
    """
    impl = backend or _impl
    size = len(values)
    if size & (size - 1) or size == 0:
        raise ValueError("length must be a power of two")
    arr = np.asarray(values)
    if np.issubdtype(arr.dtype, np.integer) and arr.dtype != np.uint64:
        peak = max(int(arr.max()), -int(arr.min()))
    else:
        peak = max((abs(int(v)) for v in values), default=0)
    if peak * size > INT64_MAX:
        out = np.array([int(v) for v in values], dtype=object)
        _pykernels.wht_inplace(out)
        return out
    out = np.array(values, dtype=np.int64)
    impl.wht_inplace(out)
    return out


def mobius(bits, backend: ModuleType | None = None) -> np.ndarray:
    impl = backend or _impl
    out = np.array(bits, dtype=np.uint8)
    size = out.shape[0]
    if size & (size - 1) or size == 0:
        raise ValueError("length must be a power of two")
    impl.mobius_inplace(out)
    return out


def matmul_checked(a: np.ndarray, b: np.ndarray, backend: ModuleType | None = None) -> np.ndarray:
    """int64 product that raises OverflowError rather than wrapping."""
    impl = backend or _impl
    return impl.matmul_checked(
        np.ascontiguousarray(a, dtype=np.int64), np.ascontiguousarray(b, dtype=np.int64)
    )
