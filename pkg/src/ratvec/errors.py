"""Exception hierarchy shared by every ratvec module."""


class RatvecError(ValueError):
    """Base class for all domain errors raised by ratvec."""


class InvalidDenominator(RatvecError):
    pass


class NegativeRadicand(RatvecError):
    pass


class IncompatibleRadicands(RatvecError):
    """Two irrational surds over different square classes were combined."""


class DegenerateRoots(RatvecError):
    pass


class NoConvergence(RatvecError):
    pass


class InvalidIndex(RatvecError):
    pass


class InvalidPoint(RatvecError):
    pass


class FormulaDegenerate(RatvecError):
    """A reconstruction denominator vanished."""


class NotARatioVector(RatvecError):
    pass


class InvalidSubstitution(RatvecError):
    pass


class InvalidDivisor(RatvecError):
    pass
