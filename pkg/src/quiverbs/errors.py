"""Exception hierarchy shared across the package."""

from __future__ import annotations


class QuiverBSError(Exception):
    """Base class for every error raised by this package."""


class InputError(QuiverBSError):
    """Malformed or inconsistent user input."""


class NonIntegralRoot(QuiverBSError):
    pass


class InconsistentRelations(InputError):
    pass


class BoundViolation(QuiverBSError):
    """A factor has lower bound above its upper bound after evaluation."""


class NotPendant(QuiverBSError):
    pass


class NumericInfeasible(QuiverBSError):
    pass


class WeightObstruction(QuiverBSError):
    """An isolated vertex carries a nonzero weight and a nonzero dimension."""


class InvariantBreach(QuiverBSError):
    """An internal consistency check failed."""


class DecompositionFailed(QuiverBSError):
    pass


class NotDynkin(QuiverBSError):
    pass


class SearchFailed(QuiverBSError):
    pass


class NotTypeD(QuiverBSError):
    pass


class OrderingFailed(QuiverBSError):
    pass


class BadParameters(QuiverBSError):
    pass


class NotSquare(QuiverBSError):
    pass


class NotProportional(QuiverBSError):
    pass


class SizeGuard(QuiverBSError):
    pass


class DegreeMismatch(QuiverBSError):
    pass


class IdentityFailed(QuiverBSError):
    pass


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
