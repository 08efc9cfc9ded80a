"""Exception types shared across the package."""


class CremonaError(Exception):
    """Base class for every error raised by this package."""


class ZeroDenominator(CremonaError, ValueError):
    pass


class ConductorMismatch(CremonaError, ValueError):
    pass


class DivisionByZero(CremonaError, ZeroDivisionError):
    pass


class GroupTooLarge(CremonaError):
    def __init__(self, cap):
        super().__init__(f"closure exceeded cap of {cap} elements")
        self.cap = cap


class InfiniteOrder(CremonaError):
    pass


class NeedsExtension(CremonaError):
    """Raised when a computation needs a larger cyclotomic field.

    ``multiplier`` is the suggested factor for the conductor.
    """

    def __init__(self, multiplier, conductor=None):
        self.multiplier = multiplier
        self.conductor = conductor
        hint = f" (try conductor {conductor * multiplier})" if conductor else ""
        super().__init__(f"needs a field extension, conductor multiplier {multiplier}{hint}")


class UnclassifiableGroup(CremonaError):
    pass


class NotAProduct(CremonaError):
    pass


class InconsistentData(CremonaError):
    pass


class NotAnAction(CremonaError):
    pass


class OffSurface(CremonaError, ValueError):
    pass


class LengthNotAvailable(CremonaError, ValueError):
    pass


class NoInvariantCurve(CremonaError, ValueError):
    pass


class Unreachable(CremonaError):
    """F_1 cannot be reached; ``gcd`` is the obstructing common divisor."""

    def __init__(self, gcd):
        super().__init__(f"F_1 unreachable: every available orbit length is divisible by {gcd}")
        self.gcd = gcd


class DegenerateInput(CremonaError, ValueError):
    pass


class InvalidInput(CremonaError):
    pass


class NoWitness(CremonaError):
    pass


class SchemaError(CremonaError, ValueError):
    def __init__(self, path, reason):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class ConductorInvalid(SchemaError):
    pass


class TooManyIndeterminacyHits(CremonaError):
    pass


class FixedCurve(CremonaError):
    """The common fixed locus is a curve rather than finitely many points.

    ``sample`` holds one point on it.
    """

    def __init__(self, sample):
        super().__init__("fixed locus is one-dimensional")
        self.sample = sample
