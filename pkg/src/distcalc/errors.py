"""Exception taxonomy for the distribution calculus.

Every error raised by this package derives from DistCalcError, so callers
can catch one type at the boundary.  Subtypes carry enough structure for
the CLI to map them onto exit codes without string matching.
"""

from __future__ import annotations


class DistCalcError(Exception):
    """Base class for all errors raised by distcalc."""


class ParseError(DistCalcError):
    """Expression text could not be parsed.

    line/col are 1-based; expected describes what the parser wanted.
    """

    def __init__(self, message: str, line: int, col: int, expected: str):
        super().__init__(f"{message} (line {line}, col {col}; expected {expected})")
        self.line = line
        self.col = col
        self.expected = expected


class SemanticError(DistCalcError):
    """Expression parsed but is not meaningful (e.g. product of two
    non-scalar factors, or a dilation by a non-positive factor)."""


class UnsupportedExpr(DistCalcError):
    """The requested operation has no representation in the expression
    language (e.g. the transform of a shifted rect, which would need a
    modulated-envelope product node)."""


class SingularEvaluation(DistCalcError):
    """Pointwise evaluation was requested for a singular distribution."""


class OrderTooHigh(DistCalcError):
    """A derivative or seminorm order exceeds the supported range."""


class ToleranceNotMet(DistCalcError):
    """A quadrature/series routine could not certify the requested
    error bound within its refinement budget."""

    def __init__(self, message: str, achieved: float | None = None):
        super().__init__(message)
        self.achieved = achieved


class BoundViolated(DistCalcError):
    """A continuity bound |<u,phi>| <= C * q_N(phi) failed on a witness."""

    def __init__(self, message: str, witness=None, ratio: float | None = None):
        super().__init__(message)
        self.witness = witness
        self.ratio = ratio


class BadFraction(DistCalcError):
    """Partial-acquisition fraction outside the reconstructible range."""


class UnfillableLine(DistCalcError):
    """A missing frequency-space line has no acquired conjugate partner."""

    def __init__(self, message: str, k: int | None = None):
        super().__init__(message)
        self.k = k
