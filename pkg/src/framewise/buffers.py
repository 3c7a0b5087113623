"""Fixed-capacity numeric buffers and the instrumented allocation counter.

Every buffer the library owns is created through `new_vec` / `new_mat` /
`new_tensor3`, which bump a process-wide counter. The real-time contract is
that the counter never moves during forward/reset: tests assert a zero delta
across the hot path, and `no_alloc_guard` makes the same check available to
applications.
"""
from __future__ import annotations

from contextlib import contextmanager

import numpy as np

# Model-wide scalar precision, fixed at load. Mixed precision is unsupported.
PRECISIONS = {"f32": np.float32, "f64": np.float64}

_allocations = 0


def dtype_of(precision: str) -> np.dtype:
    try:
        return np.dtype(PRECISIONS[precision])
    except KeyError:
        raise ValueError(f"unknown precision {precision!r}, expected one of "
                         f"{sorted(PRECISIONS)}") from None


def allocation_count() -> int:
    """Total library buffer allocations since import."""
    return _allocations


def new_vec(n: int, dtype) -> np.ndarray:
    """Zeroed length-n vector. Length is fixed for the buffer's lifetime."""
    global _allocations
    if n < 1:
        raise ValueError(f"vector length must be >= 1, got {n}")
    _allocations += 1
    return np.zeros(n, dtype=dtype)


def new_mat(rows: int, cols: int, dtype) -> np.ndarray:
    """Zeroed row-major rows x cols matrix."""
    global _allocations
    if rows < 1 or cols < 1:
        raise ValueError(f"matrix dims must be >= 1, got {rows}x{cols}")
    _allocations += 1
    return np.zeros((rows, cols), dtype=dtype)


def new_tensor3(d0: int, d1: int, d2: int, dtype) -> np.ndarray:
    """Zeroed contiguous rank-3 buffer (conv taps: [tap][out][in])."""
    global _allocations
    if min(d0, d1, d2) < 1:
        raise ValueError(f"tensor dims must be >= 1, got {d0}x{d1}x{d2}")
    _allocations += 1
    return np.zeros((d0, d1, d2), dtype=dtype)


def new_index() -> np.ndarray:
    """Single-slot int64 buffer (ring-buffer head)."""
    global _allocations
    _allocations += 1
    return np.zeros(1, dtype=np.int64)


@contextmanager
def no_alloc_guard():
    """Assert that no library buffer is allocated inside the block."""
    before = _allocations
    yield
    after = _allocations
    if after != before:
        raise AssertionError(
            f"hot path allocated {after - before} buffer(s); expected 0")
