"""Exception types shared across the package."""


class InvalidBaseError(ValueError):
    """The polynomial cannot serve as the minimal polynomial of a base."""


class BaseMismatchError(ValueError):
    """Field elements from two different bases were combined."""


class DigitParseError(ValueError):
    """Malformed digit-string text."""


class AlphabetError(ValueError):
    """A digit lies outside the alphabet an operation requires."""


class ZeroRepError(ValueError):
    """Coefficients do not form a usable representation of zero."""


class InconsistentZeroRepError(ZeroRepError):
    """The coefficients do not evaluate to zero at the base."""


class DerivationError(Exception):
    """A representation of zero could not be constructed."""


class NotFoundError(DerivationError):
    """No t-polynomial was found within the search bound."""


class UnitConjugateError(DerivationError):
    """The base has a conjugate on the unit circle, so no t-polynomial exists."""

    def __init__(self, message, classification=None):
        super().__init__(message)
        self.classification = classification
