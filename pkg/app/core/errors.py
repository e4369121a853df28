"""Exceptions raised by the decoders and the command line.

Each exception carries the process exit code the command line reports for it,
in the same spirit as an HTTP status code attached to an API error.
"""


class ListDecodeError(Exception):
    """Base class of every error raised by this package.

    Attributes:
        exit_code (int): exit status reported by the command line
    """

    exit_code: int = 2


class SpecValidationError(ListDecodeError, ValueError):
    """A code, word, polynomial or knob violates its contract."""


class FieldError(SpecValidationError):
    """Invalid field parameters or an element outside the expected field."""


class FieldMismatchError(FieldError, TypeError):
    """Arithmetic between elements of two different fields."""


class SingularBasisError(FieldError):
    """The Frobenius matrix of a candidate basis is singular."""


class DegreeError(SpecValidationError):
    """A polynomial exceeds the degree allowed by the code."""


class NotACodewordError(SpecValidationError):
    """A word that must be a codeword is not one."""


class EnumerationBudgetError(SpecValidationError):
    """An exhaustive enumeration would exceed the configured budget."""


class PatternError(SpecValidationError):
    """An error pattern cannot be built under the requested constraint."""


class ExtensionConsistencyError(ListDecodeError):
    """An extension map produced a coordinate outside the base field."""


class RadiusUnachievableError(ListDecodeError):
    """The requested list-decoding radius is beyond what interpolation can reach."""

    exit_code = 3
