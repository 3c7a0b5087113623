"""ULP-distance helpers for the cross-backend and cross-API agreement tests."""
from __future__ import annotations

import numpy as np

_INT_FOR = {np.dtype(np.float32): np.int32, np.dtype(np.float64): np.int64}


def _ordered_ints(a: np.ndarray) -> np.ndarray:
    """Map float bit patterns to integers that order like the floats.

    Negative floats have descending integer patterns; reflecting them around
    the sign bit makes the mapping monotonic, so ULP distance is an integer
    subtraction. +0.0 and -0.0 both map to 0.
    """
    itype = _INT_FOR[a.dtype]
    bits = np.asarray(a).view(itype).astype(np.int64)
    if itype is np.int32:
        return np.where(bits >= 0, bits, np.int64(-(2**31)) - bits)
    return np.where(bits >= 0, bits, np.int64(-(2**63)) - bits)


def ulp_diff(a, b) -> np.ndarray:
    """Elementwise ULP distance between two same-dtype float arrays."""
    a = np.atleast_1d(np.asarray(a))
    b = np.atleast_1d(np.asarray(b))
    if a.dtype != b.dtype:
        raise ValueError(f"dtype mismatch: {a.dtype} vs {b.dtype}")
    if np.isnan(a).any() or np.isnan(b).any():
        raise ValueError("ULP distance undefined for NaN")
    return np.abs(_ordered_ints(a) - _ordered_ints(b))


def max_ulp_diff(a, b) -> int:
    return int(ulp_diff(a, b).max())
