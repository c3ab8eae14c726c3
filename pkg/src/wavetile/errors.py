"""Exception hierarchy.

Every error raised by the library derives from :class:`WavetileError`, so the
CLI can map any of them to exit code 2 (input/format problems) while genuine
property failures are reported as data, not raised.
"""


class WavetileError(Exception):
    """Base class for all library errors."""


class MalformedInterval(WavetileError, ValueError):
    pass


class ContainsOrigin(WavetileError, ValueError):
    """Dilation machinery needs the closure of the set to avoid 0."""


class ZeroPoint(WavetileError, ValueError):
    pass


class EvenShift(WavetileError, ValueError):
    pass


class Undercovered(WavetileError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class EmptyInput(WavetileError, ValueError):
    pass


class ZeroElement(WavetileError, ValueError):
    pass


class EpsilonTooLarge(WavetileError, ValueError):
    pass


class NotSquare(WavetileError, ValueError):
    pass


class NegativeEntry(WavetileError, ValueError):
    pass


class NoDiagonal(WavetileError):
    pass


class TooLarge(WavetileError, ValueError):
    pass


class RaggedComplex(WavetileError):
    pass


class PartialCongruence(WavetileError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NotDoublyStochastic(WavetileError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class RationalXi(WavetileError, ValueError):
    pass


class TargetOutOfRange(WavetileError, ValueError):
    pass


class ZeroMass(WavetileError, ValueError):
    pass


class ValueOutOfRange(WavetileError, ValueError):
    pass


class UnknownFixture(WavetileError, KeyError):
    pass


class FormatError(WavetileError, ValueError):
    pass
