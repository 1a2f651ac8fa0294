"""Complex-valued asymptotic notation for computational complexity.

A complexity function ``f(n)`` may carry an imaginary part, as in
``n*log(n) + i*n^2``.  This package parses such functions, evaluates them,
splits them into real and imaginary parts or into modulus and phase,
compares growth over the modulus, and maps real complexities back to the
affine real form ``alpha*f(n) + beta``.
"""

from .asymptote import (
    DominanceVerdict,
    Family,
    GrowthLabel,
    Relation,
    Thresholds,
    TransformParams,
    apply_general_notation,
    check_big_o,
    classify_zeta,
    compare_modulus,
    transform_to_real,
)
from .errors import (
    DivisionByZero,
    LogOfZero,
    NegativeRealBranch,
    NonRealComplexity,
    NotIncreasing,
    NotLinearInI,
    Overflow,
    ParseError,
    ScheduleTooShort,
    ZeroAlpha,
    ZeroDenominator,
    ZetaError,
)
from .expr import ComplexValue, EvalSettings, Expr, evaluate, log_polar
from .parser import SourceSpan, parse, parse_schedule
from .printer import print_canonical
from .simplify import simplify, split_rectangular
from .zeta import (
    DEFAULT_SCHEDULE,
    PhaseKind,
    PhaseLimit,
    PolarSample,
    RealnessVerdict,
    SampleFailure,
    SampleSchedule,
    decompose_at,
    is_real_valued,
    phase_limit,
    reconstruct,
    trajectory,
)

__all__ = [
    "DominanceVerdict",
    "Family",
    "GrowthLabel",
    "Relation",
    "Thresholds",
    "TransformParams",
    "apply_general_notation",
    "check_big_o",
    "classify_zeta",
    "compare_modulus",
    "transform_to_real",
    "DivisionByZero",
    "LogOfZero",
    "NegativeRealBranch",
    "NonRealComplexity",
    "NotIncreasing",
    "NotLinearInI",
    "Overflow",
    "ParseError",
    "ScheduleTooShort",
    "ZeroAlpha",
    "ZeroDenominator",
    "ZetaError",
    "ComplexValue",
    "EvalSettings",
    "Expr",
    "evaluate",
    "log_polar",
    "SourceSpan",
    "parse",
    "parse_schedule",
    "print_canonical",
    "simplify",
    "split_rectangular",
    "DEFAULT_SCHEDULE",
    "PhaseKind",
    "PhaseLimit",
    "PolarSample",
    "RealnessVerdict",
    "SampleFailure",
    "SampleSchedule",
    "decompose_at",
    "is_real_valued",
    "phase_limit",
    "reconstruct",
    "trajectory",
]

__version__ = "0.1.0"
