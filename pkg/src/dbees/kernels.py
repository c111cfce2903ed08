"""Backend selection for the enumeration kernel.

The compiled extension is preferred; the pure-Python module is the
fallback when it was not built.
"""

from __future__ import annotations

from array import array
from typing import Sequence

from . import _kernels_py

try:
    from . import _ckernels
except ImportError:  # extension not compiled
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"


def enumerate_best(
    counts: Sequence[int],
    offsets: Sequence[int],
    matrix: Sequence[float],
    stride: int,
    backend: str | None = None,
) -> tuple[float, tuple[int, ...], int]:
    backend = backend or BACKEND
    if backend == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernel is not available")
        return _ckernels.enumerate_best(
            array("q", counts), array("q", offsets), array("d", matrix), stride
        )
    if backend == "python":
        return _kernels_py.enumerate_best(counts, offsets, matrix, stride)
    raise ValueError(f"unknown backend {backend!r}")
