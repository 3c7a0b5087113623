"""Compute backends: portable scalar loops and numba-compiled kernels.

The choice is fixed when a model is built (the Python analog of a
build-time switch); both backends are always importable so tests can
cross-check them. Contract: identical inputs produce results equal within
4 ULP for every kernel; the shared float64-interior design makes them agree
bit for bit in practice.
"""
from __future__ import annotations

from . import scalar, vectorized

BACKENDS = {scalar.KIND: scalar, vectorized.KIND: vectorized}

BACKEND_KINDS = tuple(sorted(BACKENDS))


def get_backend(kind: str):
    """Resolve a backend by name ('scalar' or 'vectorized')."""
    try:
        return BACKENDS[kind]
    except KeyError:
        raise ValueError(
            f"unknown backend {kind!r}, expected one of {BACKEND_KINDS}") from None
