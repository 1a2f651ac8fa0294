"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class ZetaError(Exception):
    """Base class for all domain errors raised by this package."""


# Evaluation


class EvaluationError(ZetaError):
    """A complexity expression could not be evaluated at a cardinality."""

    def __init__(self, message: str, n: int | None = None):
        super().__init__(message)
        self.n = n


class DivisionByZero(EvaluationError):
    pass


class LogOfZero(EvaluationError):
    pass


class Overflow(EvaluationError):
    pass


class NotLinearInI(ZetaError):
    """The imaginary unit sits where an exact Re/Im split is impossible."""


# Parsing


class ParseError(ZetaError):
    """A located syntax error.

    ``kind`` is one of the names in :data:`PARSE_ERROR_KINDS`; ``span`` is a
    ``SourceSpan`` pointing into the offending input.
    """

    def __init__(self, kind: str, message: str, span):
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.span = span

    def __str__(self) -> str:
        return f"{self.kind} at {self.span.start}..{self.span.end}: {self.message}"


PARSE_ERROR_KINDS = (
    "UnexpectedCharacter",
    "UnexpectedToken",
    "UnbalancedParenthesis",
    "UnknownFunction",
    "MalformedNumber",
    "EmptyInput",
)


class ScheduleError(ZetaError):
    pass


class ScheduleTooShort(ScheduleError):
    pass


class NotIncreasing(ScheduleError):
    pass


# Asymptotic analysis


class ZeroDenominator(ZetaError):
    """The reference modulus vanished at a tail point of a comparison."""

    def __init__(self, message: str, n: int):
        super().__init__(message)
        self.n = n


class NonRealComplexity(ZetaError):
    """The complexity has a nonzero imaginary part, so no real form exists."""

    def __init__(self, message: str, witness_n: int | None, max_abs_im: float):
        super().__init__(message)
        self.witness_n = witness_n
        self.max_abs_im = max_abs_im


class NegativeRealBranch(ZetaError):
    """Values are real but negative somewhere (phase pi rather than 0)."""

    def __init__(self, message: str, witness_n: int):
        super().__init__(message)
        self.witness_n = witness_n


class ZeroAlpha(ZetaError, ValueError):
    pass
