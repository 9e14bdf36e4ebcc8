from __future__ import annotations


class FloerconeError(Exception):
    """Base class for domain errors raised by this package."""


class ParseError(FloerconeError):
    pass


class PreconditionError(FloerconeError):
    """An operation was handed input violating its stated preconditions."""


class SliceError(FloerconeError):
    """A requested slice is not a subquotient of the complex."""


class DepthError(FloerconeError):
    """Minus-flavor truncation too shallow for the requested gradings."""
