"""Exception hierarchy.

Every domain failure raised by the package derives from :class:`SomosError`,
so callers (and the CLI) can separate domain errors from programming errors.
"""


class SomosError(Exception):
    """Base class for all domain errors."""

    @property
    def name(self):
        return type(self).__name__


class MixedExtension(SomosError, TypeError):
    pass


class NotDivisible(SomosError, ArithmeticError):
    pass


class ZeroPolynomial(SomosError, ValueError):
    pass


class ZeroPivot(SomosError, ZeroDivisionError):
    """A recurrence step would divide by a zero term."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"zero pivot at index {index}")


class ZeroTerm(SomosError, ZeroDivisionError):
    def __init__(self, index=None, message=None):
        self.index = index
        if message is None:
            message = "zero term" if index is None else f"zero term at index {index}"
        super().__init__(message)


class ZeroAlpha(SomosError, ZeroDivisionError):
    pass


class ZeroGaugeParameter(SomosError, ValueError):
    pass


class ZeroParameter(SomosError, ValueError):
    pass


class ZeroValue(SomosError, ValueError):
    pass


class InconsistentWindow(SomosError, ValueError):
    """The supplied terms do not satisfy the recurrence they are claimed to."""


class PointNotOnCurve(SomosError, ValueError):
    def __init__(self, message="point not on curve", index=None):
        self.index = index
        super().__init__(message)


class DegenerateInvariant(SomosError, ValueError):
    pass


class MissingIndex(SomosError, KeyError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"index {index} not available")

    def __str__(self):
        return self.args[0]


class NonIntegerSequence(SomosError, ValueError):
    pass


class NonIntegerOrbit(SomosError, ValueError):
    pass


class MembershipViolation(SomosError, AssertionError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class ConstraintViolated(SomosError, ValueError):
    pass


class Periodic(SomosError):
    def __init__(self, period, start, message=None):
        self.period = period
        self.start = start
        super().__init__(message or f"orbit repeats with period {period} (first at window {start})")


class InsufficientData(SomosError, ValueError):
    pass
