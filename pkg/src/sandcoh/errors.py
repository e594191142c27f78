"""Exception types shared across the package."""


class SandcohError(Exception):
    """Base class for all package errors."""


class NotHermitian(SandcohError):
    pass


class NotPSD(SandcohError):
    pass


class DimensionMismatch(SandcohError):
    pass


class AlphaOutOfRange(SandcohError):
    pass


class SupportViolation(SandcohError):
    pass


class InvalidDimension(SandcohError):
    pass


class InvalidRank(SandcohError):
    pass


class InvalidWeights(SandcohError):
    pass


class NonFiniteObjective(SandcohError):
    pass


class DimensionTooLarge(SandcohError):
    pass


class DimensionTooSmall(SandcohError):
    pass


class NonPositiveT(SandcohError):
    pass


class NonPositiveEntry(SandcohError):
    pass


class NotQubit(SandcohError):
    pass


class ConditionsViolated(SandcohError):
    pass
