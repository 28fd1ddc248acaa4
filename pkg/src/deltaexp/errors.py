"""Exception types shared across the package."""


class DeltaExpError(Exception):
    """Base class for all library errors."""


class RingMismatch(DeltaExpError):
    pass


class NonUnit(DeltaExpError, ZeroDivisionError):
    pass


class PrecisionExhausted(DeltaExpError):
    pass


class SingularSeed(DeltaExpError):
    pass


class NoRoot(DeltaExpError):
    pass


class NegativePower(DeltaExpError):
    pass


class NonInvertibleL(DeltaExpError):
    pass


class NonInvertibleIndex(DeltaExpError):
    pass


class NotIntegral(DeltaExpError):
    """A rational value has a p-power denominator the target ring cannot hold."""


class CapExceeded(DeltaExpError):
    pass


class OrderOverflow(DeltaExpError):
    pass


class HasSecondDerivative(DeltaExpError):
    pass


class BadReduction(DeltaExpError):
    pass


class SingularCurve(DeltaExpError):
    pass


class Supersingular(DeltaExpError):
    pass


class InsufficientTruncation(DeltaExpError):
    def __init__(self, msg, needed=None):
        super().__init__(msg)
        self.needed = needed


class NotInFormalDomain(DeltaExpError):
    pass


class BadPrime(DeltaExpError):
    def __init__(self, msg, flag=None):
        super().__init__(msg)
        self.flag = flag


class BadDenominator(DeltaExpError):
    pass


class IntegralityViolation(DeltaExpError):
    def __init__(self, msg, location=None):
        super().__init__(msg)
        self.location = location


class InvalidLevel(DeltaExpError):
    pass


class ParseError(DeltaExpError):
    pass
