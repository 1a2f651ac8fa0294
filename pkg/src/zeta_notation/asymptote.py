"""Finite-sample asymptotic comparison over the modulus, and real transforms.

Classical O/Omega/Theta are limit statements; here they are probed along a
``SampleSchedule``.  Over the schedule tail the log-ratio
``log g1(n) - log g2(n)`` is regressed against ``log n``: a clearly negative
trend with ratios below ``small`` means ``f1`` is dominated, a clearly
positive trend with ratios above ``large`` means it dominates, and a flat
trend with ratios inside ``[1/theta_band, theta_band]`` means Theta.
Anything else is reported as undetermined rather than guessed.

All moduli are handled as logarithms (see ``expr.log_polar``) so that
``2^n`` at ``n = 2^40`` compares correctly against polynomials.
"""

from __future__ import annotations

import enum
import math
import statistics
import sys
from dataclasses import dataclass, field

from .errors import NegativeRealBranch, NonRealComplexity, ScheduleTooShort, ZeroAlpha, ZeroDenominator
from .expr import DEFAULT_SETTINGS, Add, Constant, Divide, EvalSettings, Expr, Multiply, Subtract, evaluate, log_polar
from .simplify import simplify
from .zeta import PhaseLimit, SampleSchedule, is_real_valued, phase_limit

__all__ = [
    "Relation",
    "Thresholds",
    "DominanceVerdict",
    "BigOResult",
    "TransformParams",
    "Family",
    "GrowthLabel",
    "compare_modulus",
    "check_big_o",
    "apply_general_notation",
    "transform_to_real",
    "classify_zeta",
]


class Relation(enum.Enum):
    STRICTLY_DOMINATED = "DOMINATED"
    STRICTLY_DOMINATES = "DOMINATES"
    THETA_EQUIVALENT = "THETA"
    UNDETERMINED = "UNDETERMINED"

    @property
    def token(self) -> str:
        return self.value


@dataclass(frozen=True)
class Thresholds:
    # A log factor moves the log-ratio slope by only 1/ln(n), about 0.036 at
    # n = 2^40, and the ratio itself stays near 1/ln(n); the cutoffs below
    # are the ones that still separate n from n*log(n) at that depth.
    small: float = 1.0
    large: float = 1.0
    theta_band: float = 100.0
    slope_tol: float = 0.02

    def __post_init__(self):
        if not (self.small > 0 and self.large > 0 and self.theta_band >= 1 and self.slope_tol >= 0):
            raise ValueError(f"invalid thresholds {self!r}")


DEFAULT_THRESHOLDS = Thresholds()


@dataclass(frozen=True)
class DominanceVerdict:
    relation: Relation
    ratio_evidence: tuple[tuple[int, float], ...]
    trend_slope: float
    log_ratios: tuple[float, ...] = field(default=(), repr=False, compare=False)


@dataclass(frozen=True)
class BigOResult:
    holds: bool
    witness_constant: float | None
    from_n: int | None
    verdict: DominanceVerdict


@dataclass(frozen=True)
class TransformParams:
    """Affine parameters of ``alpha*f(n) + beta``."""

    alpha: float = 1.0
    beta: float = 0.0

    def __post_init__(self):
        if self.alpha == 0:
            raise ZeroAlpha("alpha must be nonzero")
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError("alpha and beta must be finite")


class Family(enum.Enum):
    CONSTANT = "Constant"
    LOGARITHMIC = "Logarithmic"
    LINEAR = "Linear"
    LINEARITHMIC = "Linearithmic"
    POLYNOMIAL = "Polynomial"
    EXPONENTIAL = "Exponential"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class GrowthLabel:
    family: Family
    limiting_phase: PhaseLimit
    degree: float | None = None
    slope: float | None = None


def _tail(schedule: SampleSchedule) -> tuple[int, ...]:
    tail = schedule.tail
    if len(tail) < 2:
        raise ScheduleTooShort("limit estimates need at least two tail points")
    return tail


def _slope(xs, ys) -> float:
    return statistics.linear_regression(xs, ys).slope


def _exp(x: float) -> float:
    try:
        return math.exp(x)
    except OverflowError:
        return math.inf


def compare_modulus(
    f1: Expr,
    f2: Expr,
    schedule: SampleSchedule,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> DominanceVerdict:
    """Classify ``|f1|`` against ``|f2|`` over the schedule tail."""
    tail = _tail(schedule)
    logs = []
    for n in tail:
        l2 = log_polar(f2, n, settings)[0]
        if l2 == -math.inf:
            raise ZeroDenominator(f"modulus of the reference vanishes at n={n}", n)
        logs.append(log_polar(f1, n, settings)[0] - l2)

    xs = [math.log(n) for n in tail]
    finite = [(x, d) for x, d in zip(xs, logs) if math.isfinite(d)]
    if len(finite) >= 2:
        slope = _slope(*zip(*finite))
    elif all(d == -math.inf for d in logs):
        slope = -math.inf
    else:
        slope = math.nan

    hi, lo = max(logs), min(logs)
    t = thresholds
    band = math.log(t.theta_band)
    if hi < math.log(t.small) and slope < -t.slope_tol:
        relation = Relation.STRICTLY_DOMINATED
    elif lo > math.log(t.large) and slope > t.slope_tol:
        relation = Relation.STRICTLY_DOMINATES
    elif -band <= lo and hi <= band and abs(slope) <= t.slope_tol:
        relation = Relation.THETA_EQUIVALENT
    else:
        relation = Relation.UNDETERMINED
    evidence = tuple((n, _exp(d)) for n, d in zip(tail, logs))
    return DominanceVerdict(relation, evidence, slope, tuple(logs))


def check_big_o(
    psi: Expr,
    f: Expr,
    schedule: SampleSchedule,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> BigOResult:
    """Whether ``|psi| = O(|f|)``, with a witness constant checked pointwise.

    The witness is twice the largest tail ratio (floored at the smallest
    normal double when the ratio underflows) and holds from the first tail
    point on.
    """
    verdict = compare_modulus(psi, f, schedule, thresholds, settings)
    if verdict.relation not in (Relation.STRICTLY_DOMINATED, Relation.THETA_EQUIVALENT):
        return BigOResult(False, None, None, verdict)
    c = max(2.0 * _exp(max(verdict.log_ratios)), sys.float_info.min)
    from_n = schedule.tail[0]
    log_c = math.log(c)
    for n in schedule.points:
        if n < from_n:
            continue
        if log_polar(psi, n, settings)[0] > log_c + log_polar(f, n, settings)[0]:
            return BigOResult(False, None, None, verdict)
    return BigOResult(True, c, from_n, verdict)


def apply_general_notation(f: Expr, params: TransformParams = TransformParams()) -> Expr:
    """The affine real form ``alpha*f + beta``, simplified."""
    return simplify(Add(Multiply(Constant(params.alpha), f), Constant(params.beta)))


def transform_to_real(
    g: Expr,
    params: TransformParams,
    schedule: SampleSchedule,
    tol_abs: float = 1e-9,
    tol_rel: float = 1e-9,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> Expr:
    """Invert the affine form: ``(g - beta)/alpha`` for a real complexity ``g``.

    Only defined when ``g`` has no imaginary part (phase 0, so the polar form
    reduces to the modulus); raises ``NonRealComplexity`` otherwise, and
    ``NegativeRealBranch`` when ``g`` is real but negative (phase pi).
    """
    verdict = is_real_valued(g, schedule, tol_abs, tol_rel, settings)
    if not verdict.is_real:
        raise NonRealComplexity(
            f"imaginary part is nonzero at n={verdict.witness_n} "
            f"(max |Im| = {verdict.max_abs_im:.6g}); no real asymptotic form",
            verdict.witness_n,
            verdict.max_abs_im,
        )
    for n in schedule.points:
        value = evaluate(g, n, settings)
        if value.re < -tol_abs:
            raise NegativeRealBranch(f"value is negative at n={n} (phase pi, not 0)", n)
    return simplify(Divide(Subtract(g, Constant(params.beta)), Constant(params.alpha)))


# ---------------------------------------------------------------------------
# Growth classification


def _fit(xs, ys) -> tuple[float, float]:
    """Least-squares slope and largest residual relative to the data range."""
    reg = statistics.linear_regression(xs, ys)
    worst = max(abs(y - (reg.slope * x + reg.intercept)) for x, y in zip(xs, ys))
    spread = max(ys) - min(ys)
    return reg.slope, (worst / spread if spread > 0 else 0.0)


def classify_zeta(
    f: Expr,
    schedule: SampleSchedule,
    settings: EvalSettings = DEFAULT_SETTINGS,
    tol: float = 0.05,
) -> GrowthLabel:
    """Label the growth of ``|f|`` and the limiting phase of ``f``.

    Fits ``log g`` against ``log n`` over the tail.  Flat fits are Constant,
    or Logarithmic when ``log g`` tracks ``log log n``; a slope near 1 is
    Linear or Linearithmic depending on whether ``g/n`` tracks ``log n``;
    other stable slopes are Polynomial; a ``log g`` linear in ``n`` is
    Exponential.
    """
    tail = _tail(schedule)
    limiting = phase_limit(f, schedule, settings)
    logs = [log_polar(f, n, settings)[0] for n in tail]
    if all(v == -math.inf for v in logs):
        return GrowthLabel(Family.CONSTANT, limiting, slope=0.0)
    if any(v == -math.inf for v in logs):
        return GrowthLabel(Family.UNCLASSIFIED, limiting)

    xs = [math.log(n) for n in tail]
    uu = [math.log(x) for x in xs]
    s = _slope(xs, logs)
    local = [(b - a) / (xb - xa) for a, b, xa, xb in zip(logs, logs[1:], xs, xs[1:])]
    stable = max(local) - min(local) <= tol

    k, k_resid = _fit(uu, logs)
    if s < 0.25 and k >= 0.5 and k_resid <= 0.05:
        return GrowthLabel(Family.LOGARITHMIC, limiting, slope=s)
    if abs(s) <= tol:
        return GrowthLabel(Family.CONSTANT, limiting, slope=s)
    if abs(s - 1) <= tol and stable:
        k_h = _slope(uu, [v - x for v, x in zip(logs, xs)])
        family = Family.LINEARITHMIC if k_h >= 0.5 else Family.LINEAR
        return GrowthLabel(family, limiting, degree=1.0 if family is Family.LINEAR else None, slope=s)
    if stable and s > 0:
        return GrowthLabel(Family.POLYNOMIAL, limiting, degree=s, slope=s)
    if s > 1 and not stable:
        b, resid = _fit([float(n) for n in tail], logs)
        if b > 0 and resid < 1e-6:
            return GrowthLabel(Family.EXPONENTIAL, limiting, slope=s)
    return GrowthLabel(Family.UNCLASSIFIED, limiting, slope=s)
