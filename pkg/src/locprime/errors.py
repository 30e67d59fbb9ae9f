"""Exception hierarchy shared by every locprime module."""


class LocPrimeError(Exception):
    """Base class for all errors raised by locprime."""


class NonPrimeCharacteristic(LocPrimeError, ValueError):
    pass


class UnitOrZeroModulus(LocPrimeError, ValueError):
    pass


class UnitOrZeroElement(LocPrimeError, ValueError):
    pass


class ElementOutsideContext(LocPrimeError, TypeError):
    pass


class ContextMismatch(LocPrimeError, ValueError):
    pass


class InfiniteIdealLattice(LocPrimeError, ValueError):
    pass


class QuotientContextUnsupported(LocPrimeError, ValueError):
    pass


class DimensionMismatch(LocPrimeError, ValueError):
    pass


class AmbientMismatch(LocPrimeError, ValueError):
    pass


class InfiniteModule(LocPrimeError, ValueError):
    pass


class SizeBoundExceeded(LocPrimeError, ValueError):
    pass


class NotPrimeElement(LocPrimeError, ValueError):
    pass


class MissingSecondIdeal(LocPrimeError, ValueError):
    pass


class UnknownLaw(LocPrimeError, KeyError):
    pass
