"""Rewriting: constant folding, like-term collection and Re/Im splitting.

``simplify`` normalizes every sum/product region of a tree into a linear
combination ``sum(c_k * factors_k)`` with complex coefficients, then rebuilds
it in first-appearance order.  Constants are rebuilt as the exact trees the
parser produces for their printed form (``-2`` is ``Negate(2)``, ``2 + 3*i``
is ``Add(2, Multiply(3, i))``), so a simplified tree survives a
print/parse round trip unchanged.
"""

from __future__ import annotations

import math

from . import expr as ex
from .errors import EvaluationError, NotLinearInI
from .expr import (
    Add,
    Constant,
    Divide,
    EvalSettings,
    Exp,
    Expr,
    I,
    Log,
    LogBase,
    Multiply,
    Negate,
    Power,
    Sqrt,
    Subtract,
    Variable,
)

__all__ = ["simplify", "const_tree", "constant_value", "split_rectangular"]

_MAX_PASSES = 64
ZERO = Constant(0.0)
ONE = Constant(1.0)


def _clean(z: complex) -> complex:
    return complex(z.real + 0.0, z.imag + 0.0)


def _real_tree(x: float) -> Expr:
    return Constant(x) if x >= 0 else Negate(Constant(-x))


def _pos_imag_tree(b: float) -> Expr:
    return I if b == 1 else Multiply(Constant(b), I)


def const_tree(c) -> Expr:
    """Tree the parser yields for the canonical text of constant ``c``."""
    c = _clean(complex(c))
    a, b = c.real, c.imag
    if b == 0:
        return _real_tree(a)
    if a == 0:
        if b > 0:
            return _pos_imag_tree(b)
        return Negate(I) if b == -1 else Multiply(Negate(Constant(-b)), I)
    if b > 0:
        return Add(_real_tree(a), _pos_imag_tree(b))
    return Subtract(_real_tree(a), _pos_imag_tree(-b))


def constant_value(e: Expr) -> complex | None:
    """Value of a variable-free arithmetic tree, or None."""
    if isinstance(e, Constant):
        return complex(e.value)
    if isinstance(e, Negate):
        v = constant_value(e.child)
        return None if v is None else _clean(-v)
    if isinstance(e, (Add, Subtract, Multiply)):
        a = constant_value(e.left)
        if a is None:
            return None
        b = constant_value(e.right)
        if b is None:
            return None
        if isinstance(e, Add):
            r = a + b
        elif isinstance(e, Subtract):
            r = a - b
        else:
            r = complex(a.real * b.real, 0.0) if a.imag == 0 == b.imag else a * b
        return _finite_or_none(r)
    return None


def _finite_or_none(z: complex) -> complex | None:
    if math.isfinite(z.real) and math.isfinite(z.imag):
        return _clean(z)
    return None


# ---------------------------------------------------------------------------
# Linear combinations: dict mapping a tuple of factors to its coefficient.
# The empty tuple keys the constant term.


class _NoFold(Exception):
    pass


def _coef(z: complex) -> complex:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise _NoFold
    return _clean(z)


def _mul(a: complex, b: complex) -> complex:
    if a.imag == 0 and b.imag == 0:
        return _coef(complex(a.real * b.real, 0.0))
    return _coef(a * b)


def _scale(lc: dict, k: complex) -> dict:
    return {key: _mul(c, k) for key, c in lc.items()}


def _merge(a: dict, b: dict) -> dict:
    out = dict(a)
    for key, c in b.items():
        out[key] = _coef(out[key] + c) if key in out else c
    return out


def _is_const(lc: dict) -> bool:
    return all(key == () or c == 0 for key, c in lc.items())


def _const_of(lc: dict) -> complex:
    return lc.get((), 0j)


def _single(lc: dict):
    live = [(k, c) for k, c in lc.items() if c != 0]
    return live[0] if len(live) == 1 else None


def _as_factor(lc: dict) -> tuple[tuple, complex]:
    one = _single(lc)
    if one is not None:
        return one
    return (_rebuild(lc),), 1 + 0j


def _lincomb(e: Expr) -> dict:
    if isinstance(e, Constant):
        return {(): complex(e.value)}
    if isinstance(e, Variable):
        return {(e,): 1 + 0j}
    if isinstance(e, Negate):
        return _scale(_lincomb(e.child), -1 + 0j)
    if isinstance(e, Add):
        return _merge(_lincomb(e.left), _lincomb(e.right))
    if isinstance(e, Subtract):
        return _merge(_lincomb(e.left), _scale(_lincomb(e.right), -1 + 0j))
    if isinstance(e, Multiply):
        a, b = _lincomb(e.left), _lincomb(e.right)
        if _is_const(a):
            return _scale(b, _const_of(a))
        if _is_const(b):
            return _scale(a, _const_of(b))
        ka, ca = _as_factor(a)
        kb, cb = _as_factor(b)
        return {ka + kb: _mul(ca, cb)}
    if isinstance(e, Divide):
        a, b = _lincomb(e.left), _lincomb(e.right)
        if _is_const(b) and _const_of(b) != 0:
            d = _const_of(b)
            return {key: _coef(ex._div(c, d)) for key, c in a.items()}
        return {(Divide(_rebuild(a), _rebuild(b)),): 1 + 0j}
    s = _simplify_atomic(e)
    v = constant_value(s)
    if v is not None:
        return {(): v}
    return {(s,): 1 + 0j}


def _fold_mul(factors) -> Expr:
    out = factors[0]
    for f in factors[1:]:
        out = Multiply(out, f)
    return out


def _term(key: tuple, c: complex) -> Expr:
    if key == ():
        return const_tree(c)
    factors = list(key)
    if c == 1:
        return _fold_mul(factors)
    if c == -1:
        factors[0] = Negate(factors[0])
        return _fold_mul(factors)
    return _fold_mul([const_tree(c)] + factors)


def _rebuild(lc: dict) -> Expr:
    acc = None
    for key, c in lc.items():
        if c == 0:
            continue
        if acc is None:
            acc = _term(key, c)
        elif c.imag == 0 and c.real < 0:
            acc = Subtract(acc, _term(key, -c))
        else:
            acc = Add(acc, _term(key, c))
    return ZERO if acc is None else acc


def _simplify_atomic(e: Expr) -> Expr:
    """Simplify a node that is not part of a sum/product region."""
    if isinstance(e, Power):
        base, expo = _simp(e.base), _simp(e.exponent)
        b, x = constant_value(base), constant_value(expo)
        if x is not None:
            if x == 1:
                return base
            if x == 0:
                return ONE
        if b is not None and x is not None:
            try:
                v = ex._finite(ex._pow(b, x))
            except (ex._Overflowed, EvaluationError):
                return Power(base, expo)
            return const_tree(v)
        return Power(base, expo)
    if isinstance(e, Log):
        return Log(_simp(e.argument))
    if isinstance(e, LogBase):
        return LogBase(e.base, _simp(e.argument))
    if isinstance(e, Exp):
        return Exp(_simp(e.argument))
    if isinstance(e, Sqrt):
        return Sqrt(_simp(e.argument))
    return e


def _simp(e: Expr) -> Expr:
    if isinstance(e, Variable):
        return e
    if isinstance(e, (Constant, Negate, Add, Subtract, Multiply, Divide)):
        try:
            return _rebuild(_lincomb(e))
        except _NoFold:
            if isinstance(e, Constant):
                return e
            if isinstance(e, Negate):
                return Negate(_simp(e.child))
            return type(e)(_simp(e.left), _simp(e.right))
    return _simplify_atomic(e)


def simplify(f: Expr) -> Expr:
    """Fold constants and collect like terms until nothing changes.

    Applies x+0, x*1, x*0, x-x, x/1, x^1, x^0 and double negation, plus
    distribution of constant factors over sums.  The result equals ``f``
    pointwise up to floating-point reassociation.
    """
    cur = f
    for _ in range(_MAX_PASSES):
        nxt = _simp(cur)
        if nxt == cur:
            return nxt
        cur = nxt
    return cur


# ---------------------------------------------------------------------------
# Exact real/imaginary splitting


_FULL = (-math.inf, math.inf)


def _safe(lo: float, hi: float) -> tuple[float, float]:
    if math.isnan(lo) or math.isnan(hi):
        return _FULL
    return lo, hi


def _corners(op, a, b) -> tuple[float, float]:
    vals = []
    for x in a:
        for y in b:
            try:
                v = op(x, y)
            except (OverflowError, ValueError, ZeroDivisionError):
                return _FULL
            if math.isnan(v):
                return _FULL
            vals.append(v)
    return min(vals), max(vals)


def _monotone(fn, lo, hi) -> tuple[float, float]:
    def at(x):
        try:
            return fn(x)
        except OverflowError:
            return math.inf

    return _safe(at(lo), at(hi))


def _bounds(e: Expr, settings: EvalSettings) -> tuple[float, float]:
    """Interval enclosing a real expression for every n >= 2."""
    if isinstance(e, Constant):
        if e.value.im != 0:
            return _FULL
        return e.value.re, e.value.re
    if isinstance(e, Variable):
        return 2.0, math.inf
    if isinstance(e, Negate):
        lo, hi = _bounds(e.child, settings)
        return -hi, -lo
    if isinstance(e, (Add, Subtract, Multiply, Divide)):
        a, b = _bounds(e.left, settings), _bounds(e.right, settings)
        if isinstance(e, Add):
            return _safe(a[0] + b[0], a[1] + b[1])
        if isinstance(e, Subtract):
            return _safe(a[0] - b[1], a[1] - b[0])
        if isinstance(e, Multiply):
            return _corners(lambda x, y: x * y, a, b)
        if b[0] <= 0 <= b[1]:
            return _FULL
        return _corners(lambda x, y: x / y, a, b)
    if isinstance(e, Power):
        a, b = _bounds(e.base, settings), _bounds(e.exponent, settings)
        if a[0] > 0 and all(math.isfinite(v) for v in b):
            return _corners(lambda x, y: x ** y if math.isfinite(x) else (math.inf if y > 0 else 0.0), a, b)
        return _FULL
    if isinstance(e, (Log, LogBase)):
        lo, hi = _bounds(e.argument, settings)
        if lo <= 0:
            return _FULL
        base = e.base if isinstance(e, LogBase) else settings.log_base_for_bare_log
        lb = math.log(base)
        ends = (math.log(lo) / lb, math.log(hi) / lb if hi < math.inf else math.copysign(math.inf, lb))
        return min(ends), max(ends)
    if isinstance(e, Exp):
        lo, hi = _bounds(e.argument, settings)
        return _monotone(math.exp, lo, hi)
    if isinstance(e, Sqrt):
        lo, hi = _bounds(e.argument, settings)
        if lo < 0:
            return _FULL
        return math.sqrt(lo), math.sqrt(hi)
    return _FULL


def _is_zero(b: Expr | None) -> bool:
    return b is None or simplify(b) == ZERO


def _split(e: Expr, settings: EvalSettings):
    if isinstance(e, Constant):
        v = e.value
        return _real_tree(v.re), (None if v.im == 0 else _real_tree(v.im))
    if isinstance(e, Variable):
        return e, None
    if isinstance(e, Negate):
        a, b = _split(e.child, settings)
        return Negate(a), (None if b is None else Negate(b))
    if isinstance(e, (Add, Subtract)):
        (a1, b1), (a2, b2) = _split(e.left, settings), _split(e.right, settings)
        op = type(e)
        if b1 is None and b2 is None:
            b = None
        elif b2 is None:
            b = b1
        elif b1 is None:
            b = b2 if op is Add else Negate(b2)
        else:
            b = op(b1, b2)
        return op(a1, a2), b
    if isinstance(e, Multiply):
        (a1, b1), (a2, b2) = _split(e.left, settings), _split(e.right, settings)
        re = Multiply(a1, a2)
        if b1 is None and b2 is None:
            return re, None
        if b1 is None:
            return re, Multiply(a1, b2)
        if b2 is None:
            return re, Multiply(b1, a2)
        return Subtract(re, Multiply(b1, b2)), Add(Multiply(a1, b2), Multiply(b1, a2))
    if isinstance(e, Divide):
        (a1, b1), (a2, b2) = _split(e.left, settings), _split(e.right, settings)
        if not _is_zero(b2):
            raise NotLinearInI("imaginary unit in a denominator")
        return Divide(a1, a2), (None if b1 is None else Divide(b1, a2))
    if isinstance(e, Power):
        (a1, b1), (a2, b2) = _split(e.base, settings), _split(e.exponent, settings)
        if not _is_zero(b2):
            raise NotLinearInI("imaginary unit in an exponent")
        if not _is_zero(b1):
            raise NotLinearInI("imaginary unit in a power base")
        expo = constant_value(simplify(a2))
        integral = expo is not None and expo.real == math.floor(expo.real)
        if not integral and _bounds(a1, settings)[0] <= 0:
            raise NotLinearInI("fractional power of a possibly non-positive base")
        return Power(a1, a2), None
    if isinstance(e, (Log, LogBase, Exp, Sqrt)):
        a, b = _split(e.argument, settings)
        if not _is_zero(b):
            raise NotLinearInI(f"imaginary unit inside {type(e).__name__.lower()}")
        lo = _bounds(a, settings)[0]
        if isinstance(e, (Log, LogBase)) and lo <= 0:
            raise NotLinearInI("logarithm of a possibly non-positive argument")
        if isinstance(e, Sqrt) and lo < 0:
            raise NotLinearInI("square root of a possibly negative argument")
        return (LogBase(e.base, a) if isinstance(e, LogBase) else type(e)(a)), None
    raise TypeError(f"not an expression node: {e!r}")


def split_rectangular(f: Expr, settings: EvalSettings = ex.DEFAULT_SETTINGS) -> tuple[Expr, Expr]:
    """Exact ``(Re f, Im f)`` as real-valued expressions.

    Raises ``NotLinearInI`` when the imaginary unit appears inside a
    transcendental, exponent, power base or denominator, or when a
    logarithm, root or fractional power cannot be shown to act on the
    positive real axis (the split would then not be real-valued).
    """
    a, b = _split(f, settings)
    return simplify(a), (ZERO if b is None else simplify(b))
