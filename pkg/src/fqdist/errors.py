"""Exception types raised by the library.

Everything derives from FqdistError so callers can catch the whole family;
most also subclass the matching builtin (ValueError / OverflowError-ish
semantics are kept as ValueError for simplicity).
"""


class FqdistError(Exception):
    """Base class for all library errors."""


class NonPrimeError(FqdistError, ValueError):
    """Field characteristic is not prime."""


class EvenCharacteristicError(FqdistError, ValueError):
    """Characteristic 2 requested; the quadratic character needs odd q."""


class BadDegreeError(FqdistError, ValueError):
    """Extension degree must be a positive integer."""


class FieldTooLargeError(FqdistError, ValueError):
    """q exceeds the desk-scale construction cap."""


class DivisionByZeroError(FqdistError, ZeroDivisionError):
    """Multiplicative inverse of zero requested."""


class ZeroParameterError(FqdistError, ValueError):
    """A nonzero field parameter was required."""


class OddExponentError(FqdistError, ValueError):
    """Gauss-sign table is defined for even exponents only."""


class DimensionTooSmallError(FqdistError, ValueError):
    """Cone norm needs at least two coordinates."""


class DimensionMismatchError(FqdistError, ValueError):
    """Operands live in different ambient spaces."""


class EnumerationTooLargeError(FqdistError, ValueError):
    """Requested enumeration exceeds the configured cap."""


class TooManyPairsError(FqdistError, ValueError):
    """Pair loop would exceed the configured budget."""


class EmptySetError(FqdistError, ValueError):
    """Operation requires a nonempty point set."""


class WrongParityError(FqdistError, ValueError):
    """Dimension parity does not match the requested bound."""


class UnsupportedDimensionError(FqdistError, ValueError):
    """Dimension outside the range the identities cover (d = 1)."""


class UnsupportedCaseError(FqdistError, ValueError):
    """No clause of the bound applies to these parameters."""


class SizeTooLargeError(FqdistError, ValueError):
    """Requested set size exceeds the ambient space."""


class InvalidBasisError(FqdistError, ValueError):
    """Generator parameters (direction/basis) are invalid."""


class MissingSeedError(FqdistError, ValueError):
    """A randomized generator kind was requested without a seed."""


class ParseError(FqdistError, ValueError):
    """Point-set file is malformed; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
