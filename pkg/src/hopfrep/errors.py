"""Exception types raised by the engine.

Most verification routines return a :class:`~hopfrep.report.Report` and only
raise when a precondition is violated or when an internal consistency check
fails in a way that makes further computation meaningless.
"""


class HopfRepError(Exception):
    """Base class for all errors raised by :mod:`hopfrep`."""


class FieldError(HopfRepError, ValueError):
    pass


class NotContained(HopfRepError):
    """Raised by quotient computations when the subspace is not contained."""


class RelationCheckFailed(HopfRepError):
    """A defining relation fails in the constructed algebra."""

    def __init__(self, relation: str, detail: str = ""):
        self.relation = relation
        msg = f"relation {relation!r} violated"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class RelationViolation(RelationCheckFailed):
    """A matrix triple does not satisfy the defining relations.

    ``relation`` names the first failure, ``violations`` lists all of them.
    """

    def __init__(self, relation: str, detail: str = "", violations=None):
        super().__init__(relation, detail)
        self.violations = list(violations) if violations else [relation]


class IntegralDimensionAnomaly(HopfRepError):
    pass


class VerificationFailed(HopfRepError):
    pass


class DimensionMismatch(VerificationFailed):
    pass


class UnsupportedLambda(HopfRepError):
    pass


class ZeroLambda(HopfRepError, ValueError):
    pass


class CensusIncomplete(HopfRepError):
    pass


class UnsupportedParameterRegion(HopfRepError):
    pass
