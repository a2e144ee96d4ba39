"""Exception types shared across the package."""


class KnotSlopesError(ValueError):
    """Base class for all errors raised by knotslopes."""


class ParseError(KnotSlopesError):
    """Malformed text input (PD code, braid word, slope set, expression)."""


class DomainError(KnotSlopesError):
    """Well-formed input that violates a mathematical invariant."""
