"""Text rendering with the fewest parentheses the grammar allows."""

from __future__ import annotations

import math

from .expr import (
    Add,
    Constant,
    Divide,
    Exp,
    Expr,
    Log,
    LogBase,
    Multiply,
    Negate,
    Power,
    Sqrt,
    Subtract,
    Variable,
)
from .simplify import const_tree, simplify

__all__ = ["print_canonical", "render", "format_number"]

# binding strength: sums < products < unary minus < powers < atoms
_SUM, _PRODUCT, _UNARY, _POWER, _ATOM = 1, 2, 3, 4, 5

_NAMED_BASES = {2.0: "log2", 10.0: "log10", math.e: "ln"}


def format_number(x: float) -> str:
    """Shortest text that parses back to exactly ``x`` (``x >= 0``)."""
    if x == math.e:
        return "e"
    if x == math.pi:
        return "pi"
    if x.is_integer() and x < 1e16:
        return str(int(x))
    return repr(x)


def _wrap(part: tuple[str, int], need: int) -> str:
    text, prec = part
    return f"({text})" if prec < need else text


def _render(e: Expr) -> tuple[str, int]:
    if isinstance(e, Variable):
        return "n", _ATOM
    if isinstance(e, Constant):
        v = e.value
        if v.im == 0 and v.re >= 0:
            return format_number(v.re), _ATOM
        if v.re == 0 and v.im == 1:
            return "i", _ATOM
        return _render(const_tree(complex(v)))
    if isinstance(e, Negate):
        return "-" + _wrap(_render(e.child), _UNARY), _UNARY
    if isinstance(e, (Add, Subtract)):
        op = " + " if isinstance(e, Add) else " - "
        left = _wrap(_render(e.left), _SUM)
        right = _wrap(_render(e.right), _PRODUCT)
        return left + op + right, _SUM
    if isinstance(e, (Multiply, Divide)):
        op = "*" if isinstance(e, Multiply) else "/"
        left = _wrap(_render(e.left), _PRODUCT)
        right = _wrap(_render(e.right), _UNARY)
        return left + op + right, _PRODUCT
    if isinstance(e, Power):
        base = _wrap(_render(e.base), _ATOM)
        expo = _wrap(_render(e.exponent), _UNARY)
        return f"{base}^{expo}", _POWER
    if isinstance(e, Log):
        return f"log({_render(e.argument)[0]})", _ATOM
    if isinstance(e, LogBase):
        arg = _render(e.argument)[0]
        name = _NAMED_BASES.get(e.base)
        if name is not None:
            return f"{name}({arg})", _ATOM
        # no surface syntax for other bases: change of base
        return f"ln({arg})/ln({format_number(e.base)})", _PRODUCT
    if isinstance(e, Exp):
        return f"exp({_render(e.argument)[0]})", _ATOM
    if isinstance(e, Sqrt):
        return f"sqrt({_render(e.argument)[0]})", _ATOM
    raise TypeError(f"not an expression node: {e!r}")


def render(e: Expr) -> str:
    """Render ``e`` as-is, without simplifying first."""
    return _render(e)[0]


def print_canonical(f: Expr) -> str:
    """Canonical text of ``simplify(f)``; parsing it gives that tree back."""
    return render(simplify(f))
