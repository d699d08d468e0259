"""Exception types shared across the package."""


class TwokgenError(Exception):
    """Base class for all library errors."""


class NonPrime(TwokgenError):
    pass


class DegreeTooLarge(TwokgenError):
    pass


class NoPrimitivePolynomial(TwokgenError):
    pass


class NotPrimitive(TwokgenError):
    """An explicit modulus was reducible or its root does not generate F_q*."""


class FieldMismatch(TwokgenError):
    pass


class OrderUnavailable(TwokgenError):
    """No primitive k-th root of unity for the requested k."""


class DegenerateY(TwokgenError):
    pass


class EpsilonIsOne(TwokgenError):
    pass


class RequiresSpecialization(TwokgenError):
    """The operation needs r1 = r3 = 0."""


class BadCharacteristic(TwokgenError):
    pass


class InternalMismatch(TwokgenError):
    """Two independent computations of the same quantity disagree."""


class TooLarge(TwokgenError):
    pass


class ArityMismatch(TwokgenError):
    pass


class ParseError(TwokgenError, ValueError):
    pass
