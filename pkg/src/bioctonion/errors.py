"""Exception types shared across the package.

InputError subclasses signal bad input or violated preconditions (CLI exit 1).
InvariantViolation signals an internal consistency failure (CLI exit 2).
"""


class InputError(ValueError):
    pass


class InvariantViolation(AssertionError):
    pass


class DivisionByZero(InputError, ZeroDivisionError):
    pass


class MixedFields(InputError):
    pass


class NonMonomialSum(InputError):
    pass


class ZeroInput(InputError):
    pass


class UnsupportedField(InputError):
    pass


class DegenerateGram(InputError):
    pass


class DegenerateFunctional(InputError):
    pass


class ZeroEntry(InputError):
    pass


class ZeroSlot(InputError):
    pass


class ZeroParameter(InputError):
    pass


class NotInIdeal(InputError):
    pass


class DimTooSmall(InputError):
    pass


class InvalidDims(InputError):
    pass


class NotANonsquare(InputError):
    pass


class UnknownProvenance(InputError):
    pass


class BadBasepoint(InputError):
    pass


class NotInvertible(InputError):
    pass


class MixedAlgebras(InputError):
    pass


class UnexpectedCentroidDim(InvariantViolation):
    pass


class NotI14(InputError):
    pass


class NotI12(InputError):
    pass


class NotI2(InputError):
    pass


class HNotInJ1(InputError):
    pass


class DeltaNotTraceZero(InputError):
    pass


class ParameterizationNotFound(InputError):
    pass
