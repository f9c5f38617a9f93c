"""Exception hierarchy shared by every module."""


class BruhatError(Exception):
    """Base class for library errors."""


class DivisionByZero(BruhatError, ZeroDivisionError):
    pass


class InexactDivision(BruhatError, ArithmeticError):
    """Raised when an exact quotient does not exist in the ring.

    Inside the decomposition algorithms this always means a bug or a
    corrupted input, never a recoverable condition.
    """

    def __init__(self, a, b):
        super().__init__(f"{b} does not divide {a}")
        self.dividend = a
        self.divisor = b


class DimensionMismatch(BruhatError, ValueError):
    pass


class IndexOutOfRange(BruhatError, IndexError):
    pass


class InvalidSize(BruhatError, ValueError):
    pass


class ZeroPivotMinor(BruhatError, ArithmeticError):
    """A leading minor vanished; the input lacks a generic rank profile.

    ``index`` is the order of the vanishing leading minor, counted from 1
    as in the usual notation alpha^1, alpha^2, ...
    """

    def __init__(self, index: int):
        super().__init__(f"ZeroPivotMinor({index})")
        self.index = index


class NotInRing(BruhatError, AssertionError):
    """A factor that must lie in the base ring has a non-trivial denominator."""
