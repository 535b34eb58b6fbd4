"""Exception hierarchy.

Input-validation problems derive from :class:`ValueError` so callers that only
care about "bad input" can catch that; numerical failures derive from
:class:`RuntimeError`.
"""


class NLSGraphError(Exception):
    """Base class for every error raised by the package."""


class ValidationError(NLSGraphError, ValueError):
    pass


class NonPositiveMeasure(ValidationError):
    pass


class NonPositiveWeight(ValidationError):
    pass


class UnknownEndpoint(ValidationError):
    pass


class SelfLoop(ValidationError):
    pass


class DuplicateEdge(ValidationError):
    pass


class DuplicateVertex(ValidationError):
    pass


class UnknownVertex(ValidationError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class DomainMismatch(ValidationError):
    pass


class InvalidExponent(ValidationError):
    pass


class NonPositiveMass(ValidationError):
    pass


class NonPositivePotential(ValidationError):
    pass


class MassMismatch(ValidationError):
    pass


class DisconnectedGraph(ValidationError):
    pass


class IsolatedOrigin(ValidationError):
    pass


class TooManyVertices(ValidationError):
    pass


class UnknownFixture(ValidationError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class ConfigParse(ValidationError):
    pass


class GraphFileError(ValidationError):
    """Malformed graph file; the message carries the offending field path."""


class NotConverged(NLSGraphError, RuntimeError):
    """Raised when no solver run met the tolerance.

    ``best`` holds the best iterate found (a :class:`~nlsgraph.finite.Solution`)
    so callers can inspect or reuse it.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class SweepNotSettled(NLSGraphError, RuntimeError):
    pass


class InconsistentMultiplier(NLSGraphError, RuntimeError):
    pass


class FileIO(NLSGraphError, OSError):
    pass
