"""Exception types shared across the package."""

from __future__ import annotations


class WeldkitError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(WeldkitError):
    """Malformed or inconsistent input: bad operators, codes, or files."""


class WeldError(ValidationError):
    """A weld precondition failed.

    Carries the name of the failed check and a witness describing the
    offending generators.
    """

    def __init__(self, check: str, witness, message: str):
        super().__init__(message)
        self.check = check
        self.witness = witness


class FeasibilityError(WeldkitError):
    """The instance exceeds a hard search cap and was refused, not attempted."""

    def __init__(self, message: str, required=None, cap=None):
        super().__init__(message)
        self.required = required
        self.cap = cap


class MetadataError(WeldkitError):
    """The code lacks builder-attached region metadata for this query."""
