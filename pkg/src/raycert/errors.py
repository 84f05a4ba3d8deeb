"""Exception types shared across the package."""


class RaycertError(Exception):
    """Base class for all raycert errors."""


class NotPrime(RaycertError):
    pass


class DegreeTooLarge(RaycertError):
    pass


class NotPPower(RaycertError):
    pass


class ZeroPolynomial(RaycertError):
    pass


class PrecisionTooLow(RaycertError):
    pass


class DegenerateParams(RaycertError):
    pass


class SmoothnessCheckFailed(RaycertError):
    pass


class ZeroFiberValue(RaycertError):
    pass


class UnsupportedDivisor(RaycertError):
    pass


class RankOutOfRange(RaycertError):
    pass


class BoundInstability(RaycertError):
    pass


class NotAGlobalSection(RaycertError):
    pass


class GateFailure(RaycertError):
    pass


class InadmissiblePoint(RaycertError):
    pass


class MixedSurfaces(RaycertError):
    pass
