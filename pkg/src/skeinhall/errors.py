"""Exception types raised across the package."""


class SkeinHallError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZero(SkeinHallError, ZeroDivisionError):
    pass


class SpecializationPole(SkeinHallError, ZeroDivisionError):
    pass


class EvalPole(SkeinHallError, ZeroDivisionError):
    pass


class ExponentOverflow(SkeinHallError, OverflowError):
    pass


class CellOutOfShape(SkeinHallError, ValueError):
    pass


class DegreeCapExceeded(SkeinHallError, ValueError):
    pass


class ZeroVector(SkeinHallError, ValueError):
    pass


class ZeroIndex(SkeinHallError, ValueError):
    pass


class NotUnimodular(SkeinHallError, ValueError):
    pass


class NotCoprime(SkeinHallError, ValueError):
    pass


class NonpositiveM(SkeinHallError, ValueError):
    pass


class DecompositionNotFound(SkeinHallError, AssertionError):
    pass


class NotAMonomialRatio(SkeinHallError, ArithmeticError):
    """Two pipelines disagree by more than a signed Laurent monomial."""
