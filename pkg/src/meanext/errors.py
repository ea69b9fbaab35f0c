"""Exception hierarchy.

Every error derives from :class:`MeanError`, which is itself a
``ValueError`` so callers that only care about bad input can catch that.
"""


class MeanError(ValueError):
    """Base class for all meanext errors."""


class ArityMismatch(MeanError):
    """Number of arguments does not match the arity of the mean."""


class DomainViolation(MeanError):
    """An argument lies outside the domain of the mean or generator."""


class MalformedSystem(MeanError):
    """Index system has wrong tuple lengths or out-of-range indices."""


class InvalidDimensions(MeanError):
    """The requested (n, m) pair is not allowed."""


class SearchSpaceTooLarge(MeanError):
    pass


class NotAdmissible(MeanError):
    """Index system fails at least one of the admissibility properties."""


class NonConvergence(MeanError):
    """Iteration hit the step ceiling before the bracket closed."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class MeansNotOrdered(MeanError):
    """Sampling found a tuple where K_i > K_{i+1}."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NoSignChange(MeanError):
    pass


class OddArity(MeanError):
    pass
