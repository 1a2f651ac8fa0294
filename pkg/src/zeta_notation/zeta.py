"""Polar (modulus/phase) view of complex complexity functions.

A complexity ``f(n) = Re + i*Im`` is decomposed into its modulus
``g = sqrt(Re^2 + Im^2)`` and phase ``phi`` in ``(-pi, pi]``.  The phase
uses the two-argument arctangent so that points off the right half-plane
(``-n``, ``-i*n``) land in the correct quadrant and ``Re = 0`` is defined.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import EvaluationError, NotLinearInI, ScheduleTooShort
from .expr import DEFAULT_SETTINGS, ComplexValue, EvalSettings, Expr, evaluate, log_polar
from .simplify import ZERO, split_rectangular

__all__ = [
    "SampleSchedule",
    "PolarSample",
    "SampleFailure",
    "RealnessVerdict",
    "PhaseKind",
    "PhaseLimit",
    "decompose_at",
    "reconstruct",
    "trajectory",
    "is_real_valued",
    "phase_limit",
]

DEFAULT_TAIL_WINDOW = 8
CONVERGENCE_WINDOW = 1e-3
OSCILLATION_FLIPS = 3
OSCILLATION_AMPLITUDE = 1e-2


@dataclass(frozen=True)
class SampleSchedule:
    """Strictly increasing cardinalities at which limits are probed.

    ``tail_window`` defaults to ``min(8, len(points))``.
    """

    points: tuple[int, ...]
    tail_window: int | None = None

    def __post_init__(self):
        pts = tuple(int(p) for p in self.points)
        if not pts:
            raise ScheduleTooShort("a schedule needs at least one point")
        if any(p < 2 for p in pts):
            raise ValueError("schedule points must be >= 2")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError("schedule points must be strictly increasing")
        object.__setattr__(self, "points", pts)
        m = self.tail_window
        if m is None:
            m = min(DEFAULT_TAIL_WINDOW, len(pts))
        if not 1 <= m <= len(pts):
            raise ValueError(f"tail window {m} outside 1..{len(pts)}")
        object.__setattr__(self, "tail_window", m)

    @classmethod
    def geometric(cls, start: int, factor: int, count: int, tail_window: int | None = None):
        return cls(tuple(start * factor**k for k in range(count)), tail_window)

    def with_tail_window(self, m: int) -> "SampleSchedule":
        return SampleSchedule(self.points, min(m, len(self.points)))

    @property
    def tail(self) -> tuple[int, ...]:
        return self.points[-self.tail_window:]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


DEFAULT_SCHEDULE = SampleSchedule.geometric(2, 2, 40)


@dataclass(frozen=True)
class PolarSample:
    n: int
    value: ComplexValue
    g: float
    phi: float


@dataclass(frozen=True)
class SampleFailure:
    """Stand-in for a trajectory point whose evaluation raised."""

    n: int
    error: str
    message: str


@dataclass(frozen=True)
class RealnessVerdict:
    is_real: bool
    max_abs_im: float
    witness_n: int | None = None
    symbolic: bool = False


class PhaseKind(enum.Enum):
    CONVERGES = "ConvergesTo"
    OSCILLATES = "Oscillates"
    UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class PhaseLimit:
    kind: PhaseKind
    value: float | None = None
    evidence: tuple[tuple[int, float], ...] = field(default=(), compare=False)


def _polar(value: ComplexValue, f: Expr, n: int, settings: EvalSettings) -> tuple[float, float]:
    if value.overflow:
        return math.inf, log_polar(f, n, settings)[1]
    g = value.modulus
    if g == 0.0:
        return 0.0, 0.0
    return g, math.atan2(value.im, value.re)


def decompose_at(f: Expr, n: int, settings: EvalSettings = DEFAULT_SETTINGS) -> PolarSample:
    """Modulus and phase of ``f(n)``; the phase is 0 at the origin."""
    value = evaluate(f, n, settings)
    g, phi = _polar(value, f, n, settings)
    return PolarSample(n, value, g, phi)


def reconstruct(sample: PolarSample) -> ComplexValue:
    """Euler form back to rectangular: ``g*cos(phi) + i*g*sin(phi)``."""
    g, phi = sample.g, sample.phi
    if math.isinf(g):
        re = 0.0 if math.cos(phi) == 0 else math.copysign(math.inf, math.cos(phi))
        im = 0.0 if math.sin(phi) == 0 else math.copysign(math.inf, math.sin(phi))
        return ComplexValue(re, im, overflow=True)
    return ComplexValue(g * math.cos(phi), g * math.sin(phi))


def _sample_or_failure(f, n, settings):
    try:
        return decompose_at(f, n, settings)
    except EvaluationError as err:
        return SampleFailure(n, type(err).__name__, str(err))


def trajectory(
    f: Expr,
    schedule: SampleSchedule,
    settings: EvalSettings = DEFAULT_SETTINGS,
    workers: int | None = None,
) -> list[PolarSample | SampleFailure]:
    """One sample per schedule point, in order; failures are kept in place."""
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda n: _sample_or_failure(f, n, settings), schedule.points))
    return [_sample_or_failure(f, n, settings) for n in schedule.points]


def is_real_valued(
    f: Expr,
    schedule: SampleSchedule,
    tol_abs: float = 1e-9,
    tol_rel: float = 1e-9,
    settings: EvalSettings = DEFAULT_SETTINGS,
) -> RealnessVerdict:
    """Whether ``Im f`` vanishes, symbolically if possible, else on the schedule.

    Numerically a point counts as real when ``|Im| <= tol_abs + tol_rel*g``.
    """
    if tol_abs < 0 or tol_rel < 0:
        raise ValueError("tolerances must be non-negative")
    try:
        _, imag = split_rectangular(f, settings)
    except NotLinearInI:
        imag = None
    if imag == ZERO:
        return RealnessVerdict(True, 0.0, None, symbolic=True)

    max_abs_im = 0.0
    witness = None
    for n in schedule.points:
        value = evaluate(f, n, settings)
        if value.overflow:
            # |Im|/g = |sin(phi)|; the absolute tolerance vanishes against g = inf
            phi = log_polar(f, n, settings)[1]
            im = abs(value.im)
            violates = abs(math.sin(phi)) > tol_rel
        else:
            im = abs(value.im)
            violates = im > tol_abs + tol_rel * value.modulus
        max_abs_im = max(max_abs_im, im)
        if violates and witness is None:
            witness = n
    return RealnessVerdict(witness is None, max_abs_im, witness)


def phase_limit(
    f: Expr,
    schedule: SampleSchedule,
    settings: EvalSettings = DEFAULT_SETTINGS,
    window: float = CONVERGENCE_WINDOW,
    min_flips: int = OSCILLATION_FLIPS,
    amplitude: float = OSCILLATION_AMPLITUDE,
) -> PhaseLimit:
    """Summarize the phase over the schedule tail.

    Converges when the tail phases span at most ``window`` radians (the
    limit reported is their mean); oscillates when successive differences
    larger than ``amplitude`` flip sign at least ``min_flips`` times.
    """
    evidence = tuple((n, decompose_at(f, n, settings).phi) for n in schedule.tail)
    phis = [p for _, p in evidence]
    if max(phis) - min(phis) <= window:
        mean = math.fsum(phis) / len(phis)
        return PhaseLimit(PhaseKind.CONVERGES, mean, evidence)
    steps = [b - a for a, b in zip(phis, phis[1:]) if abs(b - a) > amplitude]
    flips = sum(1 for a, b in zip(steps, steps[1:]) if (a > 0) != (b > 0))
    if flips >= min_flips:
        return PhaseLimit(PhaseKind.OSCILLATES, None, evidence)
    return PhaseLimit(PhaseKind.UNDETERMINED, None, evidence)
