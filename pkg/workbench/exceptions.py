"""Error hierarchy for the workbench.

Every failure raised by the combinatorial code derives from
``WorkbenchError`` so that views and management commands can translate
them uniformly.
"""


class WorkbenchError(Exception):
    """Base class for all workbench failures."""


# complexes

class ComplexError(WorkbenchError):
    pass


class Empty(ComplexError):
    pass


class MixedDimension(ComplexError):
    pass


class NotAFace(ComplexError):
    pass


class NotAFacet(ComplexError):
    pass


class NotAVertex(ComplexError):
    pass


class VertexClash(ComplexError):
    pass


class NonBijective(ComplexError):
    pass


class UnknownFacet(ComplexError):
    pass


class NotPseudomanifold(ComplexError):
    pass


# prismatoids

class PrismatoidError(WorkbenchError):
    pass


class BaseNotInduced(PrismatoidError):
    pass


class BasesOverlap(PrismatoidError):
    pass


class VertexOutsideBases(PrismatoidError):
    pass


class WrongBoundaryCount(PrismatoidError):
    pass


class DualDisconnected(PrismatoidError):
    pass


class EulerMismatch(PrismatoidError):
    pass


class NotAPermutation(PrismatoidError):
    pass


# flips

class FlipError(WorkbenchError):
    pass


class BadSupportSize(FlipError):
    pass


class InvalidFlip(FlipError):
    pass


class NoValidFlips(FlipError):
    pass


# annealing

class AnnealError(WorkbenchError):
    pass


class NonpositiveTemperature(AnnealError):
    pass


# strong d-step construction

class ConstructionError(WorkbenchError):
    pass


class PreconditionFailed(ConstructionError):
    pass


class DegenerateCone(ConstructionError):
    pass


class NoValidPair(ConstructionError):
    pass


class WidthRegression(ConstructionError):
    pass


class NotSimplexBases(ConstructionError):
    pass


# file formats

class ParseError(WorkbenchError):
    """Malformed COMPLEX/PRISMATOID/trace input."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
