"""Exception hierarchy.

Every error raised for bad input derives from :class:`DomainError` (itself a
``ValueError``), so callers that only care about "input was not admissible"
can catch one class.  :class:`NumericalFailure` marks breakdowns that should
not happen for valid input.
"""


class IdealTetraError(Exception):
    """Base class for all package errors."""


class DomainError(IdealTetraError, ValueError):
    """Argument lies outside the domain of the operation."""


class NumericalFailure(IdealTetraError, ArithmeticError):
    """A computation broke down for an admissible input."""


# minkowski
class ZeroVector(DomainError):
    pass


class NullArgument(DomainError):
    pass


class NotHyperbolicPoint(DomainError):
    pass


# exterior
class GradeOverflow(DomainError):
    pass


class GradeMismatch(DomainError):
    pass


class DegenerateSpan(DomainError):
    pass


class PointOnPlane(DomainError):
    pass


class NotIdeal(DomainError):
    pass


class CoincidentVertices(DomainError):
    pass


class NonPositiveGram(DomainError):
    pass


# tetra
class SignObstruction(NumericalFailure):
    pass


class Inadmissible(DomainError):
    pass


class DeltaVertex(DomainError):
    pass


class ZeroCoordinate(DomainError):
    pass


class OutOfChart(DomainError):
    pass


# lobachevsky
class ToleranceUnreachable(NumericalFailure):
    pass


# seidel
class OutsideRegion(DomainError):
    pass


class ComplexRoots(DomainError):
    pass


class BoundaryPoint(DomainError):
    pass


class EmptyIntersection(DomainError):
    pass
