"""Exception hierarchy shared by every module."""


class CPSplitError(ValueError):
    """Base class for all errors raised by :mod:`cpsplit`."""


class DimensionError(CPSplitError):
    pass


class ParseError(CPSplitError):
    pass


class NotHermitianError(CPSplitError):
    pass


class NotCPError(CPSplitError):
    pass


class NotHermitianPreservingError(CPSplitError):
    pass


class NotTracePreservingError(CPSplitError):
    pass


class NotInWedgeError(CPSplitError):
    """The generator's dissipative part came out with a negative Choi eigenvalue."""


class InvalidStateError(CPSplitError):
    pass


class WeightError(CPSplitError):
    """A weight matrix violates the hypothesis of the operation using it."""


class ZeroWeightError(WeightError):
    pass


class InvalidWeightError(WeightError):
    pass


class NotPositiveDefiniteError(WeightError):
    pass
