"""Exception hierarchy shared by every module of the package."""


class HermiteLabError(Exception):
    """Base class for all errors raised by hermite_lab."""


class SpecMismatch(HermiteLabError):
    pass


class DivisionByZero(HermiteLabError, ZeroDivisionError):
    pass


class WeightMismatch(HermiteLabError):
    pass


class BoxViolation(HermiteLabError):
    pass


class NotRegular(HermiteLabError):
    pass


class RangeViolation(HermiteLabError):
    pass


class OutOfRange(HermiteLabError):
    pass


class SingularMatrix(HermiteLabError):
    pass


class ShapeMismatch(HermiteLabError):
    pass


class DegreeMismatch(HermiteLabError):
    pass


class NotHomogeneous(HermiteLabError):
    pass


class NotInImage(HermiteLabError):
    pass


class NotInvariant(HermiteLabError):
    pass


class BudgetExceeded(HermiteLabError):
    pass


class FixtureParse(HermiteLabError):
    pass
