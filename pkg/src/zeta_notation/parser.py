"""Recursive-descent parser for complexity expressions and sample schedules.

Grammar (whitespace is insignificant between tokens)::

    expr    := term (("+"|"-") term)*
    term    := unary (("*"|"/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" unary)?
    atom    := NUMBER | "i" | "e" | "pi" | "n" | FUNC "(" expr ")" | "(" expr ")"
    FUNC    := "log" | "log2" | "log10" | "ln" | "exp" | "sqrt"

There is no implicit multiplication: ``2n`` is rejected, ``2*n`` is required.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .errors import NotIncreasing, ParseError, ScheduleTooShort
from .expr import (
    Add,
    Constant,
    Divide,
    Exp,
    Expr,
    I,
    Log,
    LogBase,
    Multiply,
    N,
    Negate,
    Power,
    Sqrt,
    Subtract,
)

__all__ = ["SourceSpan", "Token", "tokenize", "parse", "parse_schedule"]


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "ident", "op", "end"
    text: str
    span: SourceSpan
    value: float | None = None


_NUMBER = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d*)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_OPS = "+-*/^()"

FUNCTIONS = {
    "log": Log,
    "ln": lambda a: LogBase(math.e, a),
    "log2": lambda a: LogBase(2.0, a),
    "log10": lambda a: LogBase(10.0, a),
    "exp": Exp,
    "sqrt": Sqrt,
}
CONSTANTS = {"i": I, "e": Constant(math.e), "pi": Constant(math.pi)}


def _err(kind: str, message: str, start: int, end: int) -> ParseError:
    return ParseError(kind, message, SourceSpan(start, end))


def tokenize(text: str) -> list[Token]:
    tokens, error = _scan(text)
    if error is not None:
        raise error
    return tokens


def _scan(text: str) -> tuple[list[Token], ParseError | None]:
    """Tokens up to the first lexical error, and that error (if any)."""
    tokens: list[Token] = []
    try:
        _scan_into(text, tokens)
    except ParseError as err:
        return tokens, err
    return tokens, None


def _scan_into(text: str, tokens: list[Token]) -> None:
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isascii() and (ch.isdigit() or ch == "."):
            m = _NUMBER.match(text, pos)
            if m is None:
                raise _err("MalformedNumber", "a lone '.' is not a number", pos, pos + 1)
            end = m.end()
            # "2e" / "2e+" are incomplete exponents, "2n" is implicit multiplication
            if m.group(2) is not None and not m.group(2)[-1].isdigit():
                raise _err("MalformedNumber", f"incomplete exponent in {m.group(0)!r}", pos, end)
            tail = end
            while tail < len(text) and (text[tail].isalnum() or text[tail] in "._"):
                tail += 1
            if tail > end:
                raise _err(
                    "MalformedNumber",
                    f"malformed number {text[pos:tail]!r} (write 2*n, not 2n)",
                    pos,
                    tail,
                )
            value = float(m.group(0))
            if not math.isfinite(value):
                raise _err("MalformedNumber", f"number {m.group(0)!r} is out of range", pos, end)
            tokens.append(Token("num", m.group(0), SourceSpan(pos, end), value))
            pos = end
            continue
        if ch.isascii() and (ch.isalpha() or ch == "_"):
            m = _IDENT.match(text, pos)
            tokens.append(Token("ident", m.group(0), SourceSpan(pos, m.end())))
            pos = m.end()
            continue
        if ch in _OPS:
            tokens.append(Token("op", ch, SourceSpan(pos, pos + 1)))
            pos += 1
            continue
        raise _err("UnexpectedCharacter", f"unexpected character {ch!r}", pos, pos + 1)
    tokens.append(Token("end", "", SourceSpan(len(text), len(text))))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens, self.lex_error = _scan(text)
        if self.lex_error is not None:
            # surfaces only if parsing gets this far, so earlier errors win
            span = self.lex_error.span
            self.tokens.append(Token("error", "", span))
        self.pos = 0
        self.open_parens: list[Token] = []

    def peek(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind == "error":
            raise self.lex_error
        return tok

    def advance(self) -> Token:
        tok = self.peek()
        self.pos += 1
        return tok

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text in ops

    def unexpected(self, tok: Token, expected: str) -> ParseError:
        if tok.kind == "end":
            if self.open_parens:
                p = self.open_parens[-1]
                return _err("UnbalancedParenthesis", "unclosed '('", p.span.start, p.span.end)
            n = len(self.text)
            return _err("UnexpectedToken", f"unexpected end of input, expected {expected}", n, n)
        if tok.kind == "op" and tok.text == ")":
            return _err("UnbalancedParenthesis", "unmatched ')'", tok.span.start, tok.span.end)
        return _err("UnexpectedToken", f"unexpected {tok.text!r}, expected {expected}",
                    tok.span.start, tok.span.end)

    def parse(self) -> Expr:
        if self.peek().kind == "end":
            return self._empty()
        e = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise self.unexpected(tok, "an operator or end of input")
        return e

    def _empty(self):
        n = len(self.text)
        raise _err("EmptyInput", "empty expression", 0, n)

    def expr(self) -> Expr:
        left = self.term()
        while self.at_op("+", "-"):
            op = self.advance().text
            right = self.term()
            left = Add(left, right) if op == "+" else Subtract(left, right)
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.at_op("*", "/"):
            op = self.advance().text
            right = self.unary()
            left = Multiply(left, right) if op == "*" else Divide(left, right)
        return left

    def unary(self) -> Expr:
        if self.at_op("-"):
            self.advance()
            return Negate(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.at_op("^"):
            self.advance()
            return Power(base, self.unary())
        return base

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "num":
            self.advance()
            return Constant(tok.value)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            self.open_parens.append(tok)
            inner = self.expr()
            self.expect_close()
            return inner
        if tok.kind == "ident":
            name = tok.text
            if name == "n":
                self.advance()
                return N
            if name in CONSTANTS:
                self.advance()
                return CONSTANTS[name]
            if name in FUNCTIONS:
                self.advance()
                if not self.at_op("("):
                    raise self.unexpected(self.peek(), f"'(' after {name}")
                self.open_parens.append(self.advance())
                arg = self.expr()
                self.expect_close()
                return FUNCTIONS[name](arg)
            nxt = self.tokens[self.pos + 1]
            if nxt.kind == "op" and nxt.text == "(":
                raise _err("UnknownFunction", f"unknown function {name!r}",
                           tok.span.start, tok.span.end)
            raise _err("UnexpectedToken",
                       f"unknown identifier {name!r} (the only variable is n)",
                       tok.span.start, tok.span.end)
        raise self.unexpected(tok, "a number, n, i, e, pi, a function or '('")

    def expect_close(self):
        tok = self.peek()
        if tok.kind == "op" and tok.text == ")":
            self.advance()
            self.open_parens.pop()
            return
        raise self.unexpected(tok, "')'")


def parse(text: str) -> Expr:
    """Parse expression text into an ``Expr``.

    Raises ``ParseError`` for the leftmost problem, with a span into ``text``.
    """
    try:
        return _Parser(text).parse()
    except RecursionError:
        raise _err("UnexpectedToken", "expression is nested too deeply", 0, len(text)) from None


# ---------------------------------------------------------------------------
# Sample schedules


_INT = re.compile(r"\s*(\d+)\s*$")
MAX_SCHEDULE_POINTS = 4096


def _int_field(text: str, offset: int, what: str) -> int:
    m = _INT.match(text)
    if m is None:
        raise _err("MalformedNumber", f"{what} must be a non-negative integer, got {text!r}",
                   offset, offset + len(text))
    return int(m.group(1))


def parse_schedule(text: str):
    """Parse ``geometric:<start>:<factor>:<count>`` or ``list:v1,v2,...``."""
    from .zeta import SampleSchedule

    kind, sep, rest = text.partition(":")
    body = len(kind) + len(sep)
    if not sep or kind.strip() not in ("geometric", "list"):
        raise _err("UnexpectedToken", "schedule must start with 'geometric:' or 'list:'",
                   0, max(len(kind), 1) if text else 0)
    if kind.strip() == "geometric":
        parts = rest.split(":")
        if len(parts) != 3:
            raise _err("UnexpectedToken", "expected geometric:<start>:<factor>:<count>",
                       body, len(text))
        values = []
        offset = body
        for part, what in zip(parts, ("start", "factor", "count")):
            values.append(_int_field(part, offset, what))
            offset += len(part) + 1
        start, factor, count = values
        if count < 2:
            raise ScheduleTooShort(f"a geometric schedule needs count >= 2, got {count}")
        if count > MAX_SCHEDULE_POINTS:
            raise _err("MalformedNumber", f"count must be <= {MAX_SCHEDULE_POINTS}",
                       body, len(text))
        if start < 2 or factor < 2:
            raise _err("MalformedNumber", "start and factor must be >= 2", body, len(text))
        return SampleSchedule(tuple(start * factor**k for k in range(count)))
    points = []
    offset = body
    for part in rest.split(","):
        v = _int_field(part, offset, "schedule point")
        if v < 2:
            raise _err("MalformedNumber", f"schedule points must be >= 2, got {v}",
                       offset, offset + len(part))
        points.append(v)
        offset += len(part) + 1
    for a, b in zip(points, points[1:]):
        if b <= a:
            raise NotIncreasing(f"schedule must be strictly increasing ({a} then {b})")
    return SampleSchedule(tuple(points))
