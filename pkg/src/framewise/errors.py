"""Exception types shared across the library."""
from __future__ import annotations


class FramewiseError(Exception):
    """Base class for all library errors."""


class ParseError(FramewiseError):
    """Malformed model JSON. Carries the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class UnsupportedLayer(FramewiseError):
    """Layer kind not implemented by this library."""

    def __init__(self, kind: str):
        super().__init__(f"unsupported layer kind: {kind!r}")
        self.kind = kind


class ValidationError(FramewiseError):
    """Structurally valid JSON that violates the model schema rules."""

    def __init__(self, message: str, layer_index: int | None = None,
                 expected=None, actual=None):
        prefix = f"layer {layer_index}: " if layer_index is not None else ""
        detail = ""
        if expected is not None or actual is not None:
            detail = f" (expected {expected}, got {actual})"
        super().__init__(f"{prefix}{message}{detail}")
        self.layer_index = layer_index
        self.expected = expected
        self.actual = actual


class LoadError(FramewiseError):
    """Resource failure while building a model (never raised by forward)."""


class ArchitectureError(FramewiseError):
    """Mis-chained static composition, rejected at construction time."""


class ArchitectureMismatch(FramewiseError):
    """JSON architecture differs from a static model's fixed composition."""

    def __init__(self, layer_index: int, message: str):
        super().__init__(f"layer {layer_index}: {message}")
        self.layer_index = layer_index


class ConfigError(FramewiseError):
    """Invalid benchmark configuration."""


class InvalidMeasurement(FramewiseError):
    """Nonpositive process duration; no real-time factor exists."""


class FixtureError(FramewiseError):
    """Malformed verification fixture file."""
