"""Exception types raised by spincat."""


class SpinError(Exception):
    """Base class for all spincat errors."""


class SpaceMismatchError(SpinError, ValueError):
    pass


class NotHermitianError(SpinError, ValueError):
    pass


class InternalConsistencyError(SpinError, ArithmeticError):
    """A quantity that must be nonnegative came out clearly negative."""


class DegenerateSuperpositionError(SpinError, ValueError):
    """|eta> + e^{i theta}|-eta> vanishes (theta = pi, eta -> 0)."""


class UndefinedCorrelationError(SpinError, ValueError):
    """g2 has a vanishing denominator <J+ J->."""


class PoleError(SpinError, ZeroDivisionError):
    pass


class NoCrossingError(SpinError, RuntimeError):
    pass
