"""Shared exception types."""


class ValidationError(ValueError):
    """A structural invariant failed: bad table, broken relation, invalid input."""


class InputFormatError(ValidationError):
    """A file or dict payload does not match the expected schema."""


class CapExceededError(RuntimeError):
    """An exhaustive enumeration would exceed the configured cap.

    Raised instead of silently sampling; the caller decides whether a
    larger cap is acceptable.
    """
