"""Exception hierarchy shared by every dkt module."""


class DktError(Exception):
    """Base class for all errors raised by dkt."""


class DimensionError(DktError, ValueError):
    """A matrix has the wrong shape for the requested operation."""


class InvalidModulusError(DktError, ValueError):
    """The modulus is not an odd prime."""


class ParseError(DktError, ValueError):
    """Malformed text input. ``position`` is the 0-based character offset."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ValidationError(DktError, ValueError):
    """Well-formed input that violates a structural invariant."""


class NotColourableError(DktError):
    """The knot admits no non-trivial colouring for the requested prime."""


class InconsistencyError(DktError, AssertionError):
    """An internal invariant (usually cu conservation) was violated."""
