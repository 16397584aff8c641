"""Exception hierarchy shared across the package.

Validation/domain problems map to CLI exit code 2, numeric failures to 3.
"""


class LocalBiplotsError(Exception):
    """Base class for all package errors."""


class ValidationError(LocalBiplotsError, ValueError):
    """Bad user input: flags, file contents, mismatched labels."""


class ParseError(ValidationError):
    """Malformed Newick text; carries the character offset."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at character {offset})"
        super().__init__(message)
        self.offset = offset


class ShapeError(ValidationError):
    """Array dimensions do not match what an operation requires."""


class DomainError(ValidationError):
    """A point lies outside a distance's domain (e.g. negative counts)."""


class FormError(ValidationError):
    """A matrix fails a structural requirement (symmetry, SPD)."""


class ModeError(ValidationError):
    """A local-biplot mode is illegal for the distance's smoothness."""


class RankError(ValidationError):
    """Requested dimension exceeds the retained rank of a solution."""


class NumericError(LocalBiplotsError, RuntimeError):
    """An eigensolver or other numeric routine failed."""
