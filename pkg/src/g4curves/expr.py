"""A small expression language for curve components.

Grammar, loosest binding first::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := primary ('^' unary)?          # right-associative
    primary := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'

``^`` binds tighter than unary minus, so ``-2^2`` is ``-(2^2)`` and
``2^-1`` is ``2^(-1)``. Names are the variable ``s``, declared parameters,
or one of the functions in :data:`FUNCTIONS`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Union

from . import jets
from .errors import DomainError, ParseError
from .jets import Jet

FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh")
VARIABLE = "s"


@dataclass(frozen=True)
class Num:
    value: float
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Var:
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Param:
    name: str
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    pos: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"
    pos: int = field(default=0, compare=False)


Expr = Union[Num, Var, Param, Neg, BinOp, Call]


# --------------------------------------------------------------------------
# lexing

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int   # byte offset


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    i = 0
    byte_pos = 0
    while i < len(src):
        m = _TOKEN.match(src, i)
        if m is None:
            raise ParseError(f"unexpected character {src[i]!r}", byte_pos)
        kind = m.lastgroup
        text = m.group()
        if kind != "ws":
            toks.append(_Tok(kind, text, byte_pos))
        byte_pos += len(text.encode("utf-8"))
        i = m.end()
    toks.append(_Tok("end", "", byte_pos))
    return toks


# --------------------------------------------------------------------------
# parsing

class _Parser:
    def __init__(self, src: str, params: Iterable[str]):
        self.toks = _tokenize(src)
        self.i = 0
        self.params = frozenset(params)

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def advance(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.tok
        if t.text != text or t.kind != "op":
            found = "end of input" if t.kind == "end" else repr(t.text)
            raise ParseError(f"expected {text!r}, found {found}", t.pos)
        return self.advance()

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.pos)
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            t = self.advance()
            node = BinOp(t.text, node, self.term(), t.pos)
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            t = self.advance()
            node = BinOp(t.text, node, self.unary(), t.pos)
        return node

    def unary(self) -> Expr:
        if self.tok.kind == "op" and self.tok.text == "-":
            t = self.advance()
            return Neg(self.unary(), t.pos)
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.tok.kind == "op" and self.tok.text == "^":
            t = self.advance()
            return BinOp("^", base, self.unary(), t.pos)
        return base

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.advance()
            value = float(t.text)
            if not math.isfinite(value):
                raise ParseError(f"number {t.text} overflows", t.pos)
            return Num(value, t.pos)
        if t.kind == "name":
            self.advance()
            return self.name(t)
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"expected an operand, found {found}", t.pos)

    def name(self, t: _Tok) -> Expr:
        called = self.tok.kind == "op" and self.tok.text == "("
        if t.text in FUNCTIONS:
            if not called:
                raise ParseError(f"expected '(' after function {t.text!r}", self.tok.pos)
            self.advance()
            arg = self.expr()
            if self.tok.kind == "op" and self.tok.text == ",":
                raise ParseError(f"arity error: {t.text} takes exactly one argument",
                                 self.tok.pos)
            self.expect(")")
            return Call(t.text, arg, t.pos)
        if called:
            raise ParseError(f"{t.text!r} is not a function", t.pos)
        if t.text == VARIABLE:
            return Var(t.pos)
        if t.text in self.params:
            return Param(t.text, t.pos)
        raise ParseError(f"unknown identifier {t.text!r}", t.pos)


def parse_expr(src: str, params: Iterable[str] = ()) -> Expr:
    """Parse ``src``; identifiers other than ``s``, functions and ``params`` are rejected.

    >>> to_source(parse_expr("a*cos(p*s)", {"a", "p"}))
    '(a * cos((p * s)))'
    """
    return _Parser(src, params).parse()


def to_source(e: Expr) -> str:
    """Fully parenthesised source text that re-parses to an identical tree."""
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Var):
        return VARIABLE
    if isinstance(e, Param):
        return e.name
    if isinstance(e, Neg):
        return f"(-{to_source(e.operand)})"
    if isinstance(e, BinOp):
        return f"({to_source(e.left)} {e.op} {to_source(e.right)})"
    if isinstance(e, Call):
        return f"{e.func}({to_source(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


def free_params(e: Expr) -> set[str]:
    if isinstance(e, Param):
        return {e.name}
    if isinstance(e, Neg):
        return free_params(e.operand)
    if isinstance(e, BinOp):
        return free_params(e.left) | free_params(e.right)
    if isinstance(e, Call):
        return free_params(e.arg)
    return set()


def depends_on_s(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, Neg):
        return depends_on_s(e.operand)
    if isinstance(e, BinOp):
        return depends_on_s(e.left) or depends_on_s(e.right)
    if isinstance(e, Call):
        return depends_on_s(e.arg)
    return False


# --------------------------------------------------------------------------
# evaluation

def _real_div(a: float, b: float) -> float:
    if b == 0.0:
        raise DomainError("div", b)
    return a / b


def _real_call(func: str, x: float) -> float:
    if func == "log" and not x > 0.0:
        raise DomainError("log", x)
    if func == "sqrt" and x < 0.0:
        raise DomainError("sqrt", x)
    if func == "tan" and abs(math.cos(x)) < 1e-15:
        raise DomainError("tan", x)
    try:
        return getattr(math, func)(x)
    except (ValueError, OverflowError):
        raise DomainError(func, x) from None


def _real_rpow(x: float, r: float) -> float:
    if not x > 0.0:
        raise DomainError("pow", x)
    return x ** r


def _real_vpow(x: float, y: float) -> float:
    if not x > 0.0:
        raise DomainError("pow", x)
    return math.exp(y * math.log(x))


def _jet_vpow(x: Jet, y: Jet) -> Jet:
    if not x.value > 0.0:
        raise DomainError("pow", x.value)
    return jets.jet_fun("exp", y * jets.jet_fun("log", x))


@dataclass(frozen=True)
class _Backend:
    const: Callable
    add: Callable
    sub: Callable
    mul: Callable
    div: Callable
    neg: Callable
    call: Callable
    rpow: Callable
    vpow: Callable


_REAL = _Backend(
    const=float,
    add=lambda a, b: a + b,
    sub=lambda a, b: a - b,
    mul=lambda a, b: a * b,
    div=_real_div,
    neg=lambda a: -a,
    call=_real_call,
    rpow=_real_rpow,
    vpow=_real_vpow,
)

_JET = _Backend(
    const=jets.jet_const,
    add=jets.jet_add,
    sub=jets.jet_sub,
    mul=jets.jet_mul,
    div=jets.jet_div,
    neg=lambda a: -a,
    call=jets.jet_fun,
    rpow=jets.jet_pow,
    vpow=_jet_vpow,
)


def _eval(e: Expr, s, params: Mapping[str, float], be: _Backend):
    if isinstance(e, Num):
        return be.const(e.value)
    if isinstance(e, Var):
        return s
    if isinstance(e, Param):
        try:
            return be.const(params[e.name])
        except KeyError:
            raise KeyError(f"no value for parameter {e.name!r}") from None
    try:
        if isinstance(e, Neg):
            return be.neg(_eval(e.operand, s, params, be))
        if isinstance(e, Call):
            return be.call(e.func, _eval(e.arg, s, params, be))
        if isinstance(e, BinOp):
            left = _eval(e.left, s, params, be)
            if e.op == "^":
                return _power(left, e.right, s, params, be)
            right = _eval(e.right, s, params, be)
            return {"+": be.add, "-": be.sub, "*": be.mul, "/": be.div}[e.op](left, right)
    except DomainError as err:
        raise err.at(e.pos)
    raise TypeError(f"not an expression node: {e!r}")


def _power(base, exponent: Expr, s, params, be: _Backend):
    # exponents free of s are folded to a real number, and integral ones use
    # the shared square-and-multiply so real and jet results agree bit for bit
    if depends_on_s(exponent):
        return be.vpow(base, _eval(exponent, s, params, be))
    r = _eval(exponent, 0.0, params, _REAL)
    if r.is_integer() and abs(r) <= 2**31:
        def invert(x):
            return be.div(be.const(1.0), x)
        return jets.ipow(base, int(r), be.mul, be.const(1.0), invert)
    return be.rpow(base, r)


def eval_real(e: Expr, s: float, params: Mapping[str, float] | None = None) -> float:
    """Value of ``e`` at ``s``.

    >>> eval_real(parse_expr("2^3^2"), 0.0)
    512.0
    """
    return _eval(e, float(s), params or {}, _REAL)


def eval_jet(e: Expr, s: Jet, params: Mapping[str, float] | None = None) -> Jet:
    return _eval(e, s, params or {}, _JET)
