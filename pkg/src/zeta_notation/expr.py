"""Complexity-expression AST, complex values and pointwise evaluation.

Expressions are immutable trees over the single variable ``n``.  Evaluation
runs in double precision; when an intermediate leaves the double range the
whole tree is re-evaluated with an extended exponent range (mpmath at 53-bit
precision) so that moduli and phases stay meaningful for e.g. ``2^n`` at
``n = 2^40``.
"""

from __future__ import annotations

import cmath
import math
import numbers
from dataclasses import dataclass
from typing import Iterator

import mpmath

from .errors import DivisionByZero, LogOfZero, Overflow

__all__ = [
    "ComplexValue",
    "EvalSettings",
    "Expr",
    "Constant",
    "Variable",
    "Negate",
    "Add",
    "Subtract",
    "Multiply",
    "Divide",
    "Power",
    "Log",
    "LogBase",
    "Exp",
    "Sqrt",
    "N",
    "I",
    "const",
    "children",
    "evaluate",
    "log_polar",
]


def _unsign_zero(x: float) -> float:
    # -0.0 + 0.0 == +0.0; keeps principal-branch results out of -pi.
    return x + 0.0


@dataclass(frozen=True)
class ComplexValue:
    """Rectangular complex number ``re + i*im``.

    ``overflow`` marks the saturation sentinel: at least one component is
    infinite because the true value lies outside the double range.
    """

    re: float
    im: float = 0.0
    overflow: bool = False

    def __post_init__(self):
        re, im = float(self.re), float(self.im)
        if math.isnan(re) or math.isnan(im):
            raise ValueError("ComplexValue components must not be NaN")
        if not self.overflow and not (math.isfinite(re) and math.isfinite(im)):
            raise ValueError("infinite ComplexValue must be flagged as overflow")
        object.__setattr__(self, "re", _unsign_zero(re))
        object.__setattr__(self, "im", _unsign_zero(im))

    @classmethod
    def of(cls, x) -> "ComplexValue":
        if isinstance(x, ComplexValue):
            return x
        z = complex(x)
        return cls(z.real, z.imag)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0.0

    @property
    def modulus(self) -> float:
        return math.hypot(self.re, self.im)

    @property
    def phase(self) -> float:
        if self.re == 0.0 and self.im == 0.0:
            return 0.0
        return math.atan2(self.im, self.re)


@dataclass(frozen=True)
class EvalSettings:
    log_base_for_bare_log: float = math.e
    overflow_policy: str = "saturate"  # or "error"

    def __post_init__(self):
        b = self.log_base_for_bare_log
        if not (math.isfinite(b) and b > 0 and b != 1):
            raise ValueError(f"log base must be positive and != 1, got {b!r}")
        if self.overflow_policy not in ("error", "saturate"):
            raise ValueError(f"unknown overflow policy {self.overflow_policy!r}")


DEFAULT_SETTINGS = EvalSettings()


class Expr:
    """Base class of all expression nodes.

    Python operators build trees, so ``2 * N ** 2 + I * N`` works in tests
    and in interactive use.
    """

    __slots__ = ()

    def __add__(self, other):
        return Add(self, _wrap(other))

    def __radd__(self, other):
        return Add(_wrap(other), self)

    def __sub__(self, other):
        return Subtract(self, _wrap(other))

    def __rsub__(self, other):
        return Subtract(_wrap(other), self)

    def __mul__(self, other):
        return Multiply(self, _wrap(other))

    def __rmul__(self, other):
        return Multiply(_wrap(other), self)

    def __truediv__(self, other):
        return Divide(self, _wrap(other))

    def __rtruediv__(self, other):
        return Divide(_wrap(other), self)

    def __pow__(self, other):
        return Power(self, _wrap(other))

    def __rpow__(self, other):
        return Power(_wrap(other), self)

    def __neg__(self):
        return Negate(self)

    def __str__(self) -> str:
        from .printer import print_canonical

        return print_canonical(self)


def _wrap(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (numbers.Number, ComplexValue)):
        return Constant(x)
    raise TypeError(f"cannot use {type(x).__name__} in an expression")


@dataclass(frozen=True, eq=True)
class Constant(Expr):
    value: ComplexValue

    def __post_init__(self):
        if not isinstance(self.value, ComplexValue):
            object.__setattr__(self, "value", ComplexValue.of(self.value))
        if self.value.overflow:
            raise ValueError("constants must be finite")

    def __repr__(self) -> str:
        v = self.value
        return f"Constant({complex(v)!r})" if v.im else f"Constant({v.re!r})"


@dataclass(frozen=True, eq=True)
class Variable(Expr):
    def __repr__(self) -> str:
        return "Variable()"


@dataclass(frozen=True)
class Negate(Expr):
    child: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Subtract(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Multiply(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Divide(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Power(Expr):
    base: Expr
    exponent: Expr


@dataclass(frozen=True)
class Log(Expr):
    """Logarithm whose base comes from ``EvalSettings`` (natural by default)."""

    argument: Expr


@dataclass(frozen=True)
class LogBase(Expr):
    base: float
    argument: Expr

    def __post_init__(self):
        b = float(self.base)
        if not (math.isfinite(b) and b > 0 and b != 1):
            raise ValueError(f"LogBase base must be positive and != 1, got {b!r}")
        object.__setattr__(self, "base", b)


@dataclass(frozen=True)
class Exp(Expr):
    argument: Expr


@dataclass(frozen=True)
class Sqrt(Expr):
    argument: Expr


N = Variable()
I = Constant(ComplexValue(0.0, 1.0))


def const(x) -> Constant:
    return Constant(ComplexValue.of(x))


BINARY = (Add, Subtract, Multiply, Divide)
UNARY_FUNCS = (Log, Exp, Sqrt)


def children(e: Expr) -> tuple[Expr, ...]:
    if isinstance(e, (Constant, Variable)):
        return ()
    if isinstance(e, Negate):
        return (e.child,)
    if isinstance(e, BINARY):
        return (e.left, e.right)
    if isinstance(e, Power):
        return (e.base, e.exponent)
    if isinstance(e, (Log, LogBase, Exp, Sqrt)):
        return (e.argument,)
    raise TypeError(f"not an expression node: {e!r}")


def walk(e: Expr) -> Iterator[Expr]:
    """Pre-order traversal."""
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


# ---------------------------------------------------------------------------
# Double-precision evaluation


class _Overflowed(Exception):
    pass


def _finite(z: complex) -> complex:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise _Overflowed
    return complex(_unsign_zero(z.real), _unsign_zero(z.imag))


def _is_int(x: float) -> bool:
    return math.isfinite(x) and x == math.floor(x)


def _ln(z: complex, what: str) -> complex:
    if z == 0:
        raise LogOfZero(f"logarithm of zero in {what}")
    if z.imag == 0 and z.real > 0:
        return complex(math.log(z.real), 0.0)
    return cmath.log(z)


def _div(a: complex, b: complex) -> complex:
    if b == 0:
        raise DivisionByZero("denominator evaluates to 0")
    if a.imag == 0 and b.imag == 0:
        return complex(a.real / b.real, 0.0)
    return a / b


def _pow(a: complex, b: complex) -> complex:
    if a == 0:
        if b == 0:
            return complex(1.0, 0.0)
        if b.imag == 0 and b.real > 0:
            return complex(0.0, 0.0)
        raise DivisionByZero("zero raised to a non-positive or complex power")
    try:
        if a.imag == 0 and b.imag == 0 and (a.real > 0 or _is_int(b.real)):
            return complex(a.real ** b.real, 0.0)
        return a ** b
    except OverflowError:
        raise _Overflowed from None
    except ZeroDivisionError:
        raise DivisionByZero("zero raised to a non-positive or complex power") from None


def _exp(a: complex) -> complex:
    try:
        if a.imag == 0:
            return complex(math.exp(a.real), 0.0)
        return cmath.exp(a)
    except OverflowError:
        raise _Overflowed from None


def _sqrt(a: complex) -> complex:
    if a.imag == 0 and a.real >= 0:
        return complex(math.sqrt(a.real), 0.0)
    return cmath.sqrt(a)


def _eval_double(e: Expr, x: complex, settings: EvalSettings) -> complex:
    if isinstance(e, Constant):
        return complex(e.value)
    if isinstance(e, Variable):
        return x
    if isinstance(e, Negate):
        return _finite(-_eval_double(e.child, x, settings))
    if isinstance(e, BINARY):
        a = _eval_double(e.left, x, settings)
        b = _eval_double(e.right, x, settings)
        if isinstance(e, Add):
            return _finite(a + b)
        if isinstance(e, Subtract):
            return _finite(a - b)
        if isinstance(e, Multiply):
            if a.imag == 0 and b.imag == 0:
                return _finite(complex(a.real * b.real, 0.0))
            return _finite(a * b)
        return _finite(_div(a, b))
    if isinstance(e, Power):
        return _finite(_pow(_eval_double(e.base, x, settings),
                            _eval_double(e.exponent, x, settings)))
    if isinstance(e, Log):
        z = _ln(_eval_double(e.argument, x, settings), "log")
        if settings.log_base_for_bare_log != math.e:
            z = z / math.log(settings.log_base_for_bare_log)
        return _finite(z)
    if isinstance(e, LogBase):
        z = _ln(_eval_double(e.argument, x, settings), "log")
        if e.base != math.e:
            z = z / math.log(e.base)
        return _finite(z)
    if isinstance(e, Exp):
        return _finite(_exp(_eval_double(e.argument, x, settings)))
    if isinstance(e, Sqrt):
        return _finite(_sqrt(_eval_double(e.argument, x, settings)))
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# Extended-range evaluation (same semantics, unbounded exponent)

_ctx = mpmath.MPContext()
_ctx.prec = 53


def _eval_ext(e: Expr, x, settings: EvalSettings):
    c = _ctx
    if isinstance(e, Constant):
        return c.mpc(e.value.re, e.value.im)
    if isinstance(e, Variable):
        return x
    if isinstance(e, Negate):
        return -_eval_ext(e.child, x, settings)
    if isinstance(e, BINARY):
        a = _eval_ext(e.left, x, settings)
        b = _eval_ext(e.right, x, settings)
        if isinstance(e, Add):
            return a + b
        if isinstance(e, Subtract):
            return a - b
        if isinstance(e, Multiply):
            return a * b
        if b == 0:
            raise DivisionByZero("denominator evaluates to 0")
        return a / b
    if isinstance(e, Power):
        a = _eval_ext(e.base, x, settings)
        b = _eval_ext(e.exponent, x, settings)
        if a == 0:
            if b == 0:
                return c.mpc(1)
            if b.imag == 0 and b.real > 0:
                return c.mpc(0)
            raise DivisionByZero("zero raised to a non-positive or complex power")
        if a.imag == 0 and b.imag == 0 and (a.real > 0 or b.real == c.floor(b.real)):
            if a.real > 0:
                return c.mpc(c.power(a.real, b.real))
            return c.mpc(a.real ** int(b.real))
        return c.power(a, b)
    if isinstance(e, (Log, LogBase)):
        a = _eval_ext(e.argument, x, settings)
        if a == 0:
            raise LogOfZero("logarithm of zero in log")
        z = c.log(a)
        base = e.base if isinstance(e, LogBase) else settings.log_base_for_bare_log
        if base != math.e:
            z = z / c.log(base)
        return c.mpc(z)
    if isinstance(e, Exp):
        return c.mpc(c.exp(_eval_ext(e.argument, x, settings)))
    if isinstance(e, Sqrt):
        return c.mpc(c.sqrt(_eval_ext(e.argument, x, settings)))
    raise TypeError(f"not an expression node: {e!r}")


def _check_n(n) -> int:
    if isinstance(n, bool) or not isinstance(n, numbers.Integral):
        raise TypeError(f"cardinality must be an integer, got {n!r}")
    if n < 2:
        raise ValueError(f"cardinality must be >= 2, got {n}")
    return int(n)


def _evaluate(f: Expr, n: int, settings: EvalSettings):
    """Return ``(value, extended)``; ``extended`` is set only after overflow."""
    n = _check_n(n)
    try:
        return ComplexValue.of(_eval_double(f, complex(n), settings)), None
    except (_Overflowed, OverflowError):
        pass
    if settings.overflow_policy == "error":
        raise Overflow(f"value exceeds double range at n={n}", n)
    z = _eval_ext(f, _ctx.mpc(n), settings)
    re, im = float(z.real), float(z.imag)
    if math.isfinite(re) and math.isfinite(im):
        return ComplexValue(re, im), None
    return ComplexValue(re, im, overflow=True), z


def evaluate(f: Expr, n: int, settings: EvalSettings = DEFAULT_SETTINGS) -> ComplexValue:
    """Value of ``f`` at cardinality ``n`` (``n >= 2``).

    Transcendentals off the positive real axis take the principal branch.
    Raises ``DivisionByZero``, ``LogOfZero``, or ``Overflow`` (error policy
    only); under the saturate policy an out-of-range value comes back with
    ``overflow=True`` and infinite components.
    """
    try:
        return _evaluate(f, n, settings)[0]
    except (DivisionByZero, LogOfZero) as err:
        if err.n is None:
            err.n = n
        raise


def log_polar(f: Expr, n: int, settings: EvalSettings = DEFAULT_SETTINGS) -> tuple[float, float]:
    """``(log |f(n)|, arg f(n))`` computed without overflow or underflow.

    The logarithm of the modulus is ``-inf`` only when ``f(n)`` is exactly 0.
    """
    try:
        value, ext = _evaluate(f, n, settings)
    except (DivisionByZero, LogOfZero) as err:
        if err.n is None:
            err.n = n
        raise
    if ext is None:
        g = value.modulus
        if 0.0 < g < math.inf and g > 1e-300:
            return math.log(g), value.phase
        ext = _eval_ext(f, _ctx.mpc(n), settings)
    if ext == 0:
        return -math.inf, 0.0
    phase = float(_ctx.arg(ext))
    if phase == -math.pi:
        phase = math.pi
    return float(_ctx.log(abs(ext))), phase
