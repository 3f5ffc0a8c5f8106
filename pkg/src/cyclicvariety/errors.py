"""Exception hierarchy shared by every module."""


class CyclicVarietyError(Exception):
    """Base class for all library errors."""


class NotPrime(CyclicVarietyError, ValueError):
    pass


class BudgetExceeded(CyclicVarietyError):
    pass


class FieldMismatch(CyclicVarietyError, TypeError):
    pass


class DivisionByZero(CyclicVarietyError, ZeroDivisionError):
    pass


class ZeroElement(CyclicVarietyError, ValueError):
    pass


class NoSuchRoot(CyclicVarietyError, ValueError):
    pass


class NotCoprime(CyclicVarietyError, ValueError):
    pass


class ArityMismatch(CyclicVarietyError, ValueError):
    pass


class IndexOutOfRange(CyclicVarietyError, IndexError):
    pass


class NotDivisible(CyclicVarietyError, ArithmeticError):
    pass


class NotHomogeneous(CyclicVarietyError, ValueError):
    pass


class ZeroPolynomial(CyclicVarietyError, ValueError):
    pass


class CardinalityError(CyclicVarietyError, ValueError):
    pass


class NotClosed(CyclicVarietyError, ValueError):
    pass


class NotSubset(CyclicVarietyError, ValueError):
    pass


class NoNonzeroCodewords(CyclicVarietyError, ValueError):
    pass
