"""Exception types shared by all hilbertkit modules."""


class HilbertKitError(ValueError):
    """Base class for invalid-input errors raised by the toolkit."""


class InvalidMatrix(HilbertKitError):
    pass


class DimensionMismatch(HilbertKitError):
    pass


class NotSquare(HilbertKitError):
    pass


class NotHermitian(HilbertKitError):
    pass


class NoConvergence(ArithmeticError):
    """An iterative factorization exhausted its sweep budget."""


class WrongSpaceTag(HilbertKitError):
    pass


class NotUnitaryBasis(HilbertKitError):
    pass


class InvalidDimension(HilbertKitError):
    pass


class EmptyFactorList(HilbertKitError):
    pass


class ZeroMatrix(HilbertKitError):
    pass


class ZeroElement(HilbertKitError):
    pass


class NotUnit(HilbertKitError):
    pass


class WeightsNotNormalized(HilbertKitError):
    pass


class DimensionTooSmall(HilbertKitError):
    pass


class InconsistentMeasure(HilbertKitError):
    pass


class EmptyFamily(HilbertKitError):
    pass


class UnsupportedP(HilbertKitError):
    pass


class NotDensityOperator(HilbertKitError):
    pass
