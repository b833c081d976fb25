"""Exception and warning types raised across the package."""


class FlatMinkError(Exception):
    """Base class for all errors raised by flatmink."""


class DegenerateTriple(FlatMinkError):
    pass


class ParallelPoints(FlatMinkError):
    pass


class NotAdmissibleForEitherHalf(FlatMinkError):
    pass


class UnknownName(FlatMinkError):
    pass


class BadParam(FlatMinkError):
    pass


class DomainError(FlatMinkError):
    pass


class NoConvergence(FlatMinkError):
    pass


class InvalidParams(FlatMinkError):
    pass


class IdenticalCircles(FlatMinkError):
    pass


class PointNotOnCircle(FlatMinkError):
    pass


class PointOnCircle(FlatMinkError):
    pass


class NotNormalised(FlatMinkError):
    pass


class ConditioningWarning(UserWarning):
    """A solver finished but its self-check residuals exceed tolerance."""
