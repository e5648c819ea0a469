"""Exception hierarchy shared by every module of the package."""


class MaxClassError(Exception):
    """Base class for all package errors."""


class InvalidParameter(MaxClassError, ValueError):
    pass


class SpecMismatch(MaxClassError, ValueError):
    """Operands belong to different group algebras."""


class NotAUnit(MaxClassError, ValueError):
    """Element has augmentation 0 and therefore is not invertible."""


class WrongFamily(MaxClassError, ValueError):
    pass


class NotInH(MaxClassError, ValueError):
    pass


class NotSelfConjugated(MaxClassError, ValueError):
    pass


class OutOfRange(MaxClassError, ValueError):
    pass


class CapExceeded(MaxClassError, RuntimeError):
    """A closure or an order computation ran past its declared bound."""


ClosureCap = CapExceeded


class NotNormal(MaxClassError, RuntimeError):
    pass


class SizeCap(MaxClassError, ValueError):
    pass


class UnsupportedRange(MaxClassError, ValueError):
    pass


class UnknownCheck(MaxClassError, KeyError):
    pass
