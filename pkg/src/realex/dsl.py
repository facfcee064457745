"""A small expression language for real functions of one variable ``x``.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | atom
    atom   := NUMBER | 'x' | NAME '(' expr (',' expr)* ')' | '(' expr [':' expr] ')'

NAME is one of abs, min, max, exp, sqrt.  Division by a non-constant needs
a guarded denominator ``(den : bound)`` asserting den >= bound > 0 on the
interval; the bound must be a constant.  Division by a constant folds into
a rational literal.

:func:`derive_modulus` propagates value ranges and Lipschitz constants
through the tree and returns g(k) = ceil(L) k.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from . import reals as R
from .errors import ModulusError, ParseError
from .functions import UNIT, FnWithModulus, Interval, RealFn, UniformModulus, exp_upper
from .reals import Real


# -- syntax tree --------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    def __str__(self) -> str:
        return "x"


@dataclass(frozen=True)
class Lit:
    value: Fraction

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class Bin:
    op: str  # one of + - * min max
    left: "Expr"
    right: "Expr"

    def __str__(self) -> str:
        if self.op in ("min", "max"):
            return f"{self.op}({self.left}, {self.right})"
        return f"({self.left} {self.op} {self.right})"


@dataclass(frozen=True)
class Unary:
    op: str  # one of neg abs exp sqrt
    arg: "Expr"

    def __str__(self) -> str:
        return f"-{self.arg}" if self.op == "neg" else f"{self.op}({self.arg})"


@dataclass(frozen=True)
class Div:
    """num / den with the certificate den >= bound > 0."""
    num: "Expr"
    den: "Expr"
    bound: Fraction

    def __str__(self) -> str:
        return f"({self.num} / ({self.den} : {self.bound}))"


Expr = Union[Var, Lit, Bin, Unary, Div]
ExprAst = Expr


@dataclass(frozen=True)
class _Guarded:
    expr: Expr
    bound: Fraction


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_]\w*)|(.))")
_FUNCS = {"abs": 1, "exp": 1, "sqrt": 1, "min": 2, "max": 2}


def _tokenize(src: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m.group(1):
            out.append(("num", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str):
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> None:
        kind, val, col = self.take()
        if val != text or kind != "op":
            raise ParseError(f"expected {text!r}, found {val or 'end of input'!r}", col)

    def parse(self) -> Expr:
        e = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", col)
        return _plain(e, col)

    def expr(self):
        col = self.peek()[2]
        left = _plain(self.term(), col)
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            col = self.peek()[2]
            left = _fold(Bin(op, left, _plain(self.term(), col)))
        return left

    def term(self):
        col = self.peek()[2]
        left = self.unary()
        while self.peek()[1] in ("*", "/") and self.peek()[0] == "op":
            op, at = self.take()[1], self.peek()[2]
            right = self.unary()
            left = _plain(left, col)
            if op == "*":
                left = _fold(Bin("*", left, _plain(right, at)))
            else:
                left = _divide(left, right, at)
        return left

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            col = self.peek()[2]
            return _fold(Unary("neg", _plain(self.unary(), col)))
        return self.atom()

    def atom(self):
        kind, val, col = self.take()
        if kind == "num":
            return Lit(Fraction(val))
        if kind == "name":
            if val == "x":
                return Var()
            if val not in _FUNCS:
                raise ParseError(f"unknown identifier {val!r}", col)
            self.expect("(")
            args = [_plain(self.expr(), col)]
            while self.peek()[:2] == ("op", ","):
                self.take()
                args.append(_plain(self.expr(), col))
            self.expect(")")
            if len(args) != _FUNCS[val]:
                raise ParseError(f"{val} takes {_FUNCS[val]} argument(s)", col)
            if len(args) == 2:
                return _fold(Bin(val, *args))
            return _fold(Unary(val, args[0]))
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.peek()[:2] == ("op", ":"):
                self.take()
                bcol = self.peek()[2]
                bound = self.expr()
                self.expect(")")
                if not isinstance(bound, Lit):
                    raise ParseError("division guard must be a constant", bcol)
                if bound.value <= 0:
                    raise ParseError("division guard must be positive", bcol)
                return _Guarded(inner, bound.value)
            self.expect(")")
            return inner
        raise ParseError(f"expected an operand, found {val or 'end of input'!r}", col)


def _plain(e, col: int) -> Expr:
    if isinstance(e, _Guarded):
        raise ParseError("a guarded group may only appear as a denominator", col)
    return e


def _divide(num: Expr, den, col: int) -> Expr:
    if isinstance(den, _Guarded):
        if isinstance(den.expr, Lit):
            den = den.expr
        else:
            return Div(num, den.expr, den.bound)
    if isinstance(den, Lit):
        if den.value == 0:
            raise ParseError("division by zero", col)
        return _fold(Bin("*", num, Lit(1 / den.value)))
    raise ParseError("division needs a guard '(den : bound)'", col)


_FOLD_BIN = {
    "+": lambda a, b: a + b, "-": lambda a, b: a - b, "*": lambda a, b: a * b,
    "min": min, "max": max,
}


def _fold(e: Expr) -> Expr:
    """Fold operations whose operands are all rational literals."""
    if isinstance(e, Bin) and isinstance(e.left, Lit) and isinstance(e.right, Lit):
        return Lit(_FOLD_BIN[e.op](e.left.value, e.right.value))
    if isinstance(e, Unary) and isinstance(e.arg, Lit):
        v = e.arg.value
        if e.op == "neg":
            return Lit(-v)
        if e.op == "abs":
            return Lit(abs(v))
        if e.op == "exp" and v == 0:
            return Lit(Fraction(1))
    return e


def parse_expr(src: str) -> Expr:
    """Parse ``src``; ParseError carries the 0-based column of the problem."""
    return _Parser(src).parse()


# -- ranges and Lipschitz bounds ----------------------------------------------

@dataclass(frozen=True)
class Bounds:
    lo: Fraction
    hi: Fraction
    lip: Fraction

    @property
    def mag(self) -> Fraction:
        return max(abs(self.lo), abs(self.hi))


_SQRT_BITS = 30


def _sqrt_down(q: Fraction) -> Fraction:
    s = 1 << _SQRT_BITS
    return Fraction(math.isqrt(math.floor(q * s * s)), s)


def _sqrt_up(q: Fraction) -> Fraction:
    s = 1 << _SQRT_BITS
    r = math.isqrt(math.ceil(q * s * s))
    if r * r < q * s * s:
        r += 1
    return Fraction(r, s)


def bounds(e: Expr, dom: Interval) -> Bounds:
    """Range enclosure and Lipschitz constant of e on dom."""
    if isinstance(e, Var):
        return Bounds(dom.a, dom.b, Fraction(1))
    if isinstance(e, Lit):
        return Bounds(e.value, e.value, Fraction(0))
    if isinstance(e, Bin):
        l, r = bounds(e.left, dom), bounds(e.right, dom)
        if e.op == "+":
            return Bounds(l.lo + r.lo, l.hi + r.hi, l.lip + r.lip)
        if e.op == "-":
            return Bounds(l.lo - r.hi, l.hi - r.lo, l.lip + r.lip)
        if e.op == "*":
            corners = [a * b for a in (l.lo, l.hi) for b in (r.lo, r.hi)]
            return Bounds(min(corners), max(corners), l.lip * r.mag + r.lip * l.mag)
        pick = min if e.op == "min" else max
        return Bounds(pick(l.lo, r.lo), pick(l.hi, r.hi), max(l.lip, r.lip))
    if isinstance(e, Unary):
        a = bounds(e.arg, dom)
        if e.op == "neg":
            return Bounds(-a.hi, -a.lo, a.lip)
        if e.op == "abs":
            lo = Fraction(0) if a.lo <= 0 <= a.hi else min(abs(a.lo), abs(a.hi))
            return Bounds(lo, a.mag, a.lip)
        if e.op == "exp":
            hi = Fraction(exp_upper(a.hi)) if a.hi > 0 else Fraction(1)
            lo = Fraction(1, exp_upper(-a.lo)) if a.lo < 0 else Fraction(1)
            return Bounds(lo, hi, a.lip * hi)
        if e.op == "sqrt":
            if a.lo <= 0:
                raise ModulusError(f"sqrt argument {e.arg} is not bounded away from 0")
            lo = _sqrt_down(a.lo)
            return Bounds(lo, _sqrt_up(a.hi), a.lip / (2 * lo))
    if isinstance(e, Div):
        n, d = bounds(e.num, dom), bounds(e.den, dom)
        if d.hi < e.bound:
            raise ModulusError(f"guard {e.bound} exceeds the range of {e.den}")
        dlo = max(d.lo, e.bound)
        rlo, rhi = 1 / d.hi, 1 / dlo
        rlip = d.lip / (dlo * dlo)
        corners = [a * b for a in (n.lo, n.hi) for b in (rlo, rhi)]
        return Bounds(min(corners), max(corners), n.lip * rhi + rlip * n.mag)
    raise TypeError(f"not an expression: {e!r}")


def lipschitz(e: Expr, dom: Interval = UNIT) -> Fraction:
    return bounds(e, dom).lip


def derive_modulus(e: Expr, interval: Interval = UNIT) -> UniformModulus:
    """g(k) = ceil(L) k, at least 1, for a Lipschitz bound L of e."""
    c = math.ceil(lipschitz(e, interval))
    return UniformModulus(lambda k: max(1, c * k), monotone=True)


# -- evaluation ---------------------------------------------------------------

def _evaluator(e: Expr, dom: Interval):
    """A closure Real -> Real for e, with guards and exp caps fixed up front."""
    if isinstance(e, Var):
        return lambda x: x
    if isinstance(e, Lit):
        c = R.from_rational(e.value)
        return lambda x: c
    if isinstance(e, Bin):
        l, r = _evaluator(e.left, dom), _evaluator(e.right, dom)
        op = {"+": R.add, "-": R.sub, "*": R.mul, "min": R.minimum, "max": R.maximum}[e.op]
        return lambda x: op(l(x), r(x))
    if isinstance(e, Unary):
        a = _evaluator(e.arg, dom)
        if e.op == "exp":
            cap = bounds(e.arg, dom).mag
            return lambda x: R.exp_real(a(x), cap)
        op = {"neg": R.neg, "abs": R.absolute, "sqrt": R.sqrt_nonneg}[e.op]
        return lambda x: op(a(x))
    if isinstance(e, Div):
        n, d = _evaluator(e.num, dom), _evaluator(e.den, dom)
        return lambda x: R.mul(n(x), R.recip_guarded(d(x), e.bound))
    raise TypeError(f"not an expression: {e!r}")


def polynomial(e: Expr) -> Optional[list[Fraction]]:
    """Ascending coefficients when e uses only x, literals, + - * and negation."""
    if isinstance(e, Var):
        return [Fraction(0), Fraction(1)]
    if isinstance(e, Lit):
        return [e.value]
    if isinstance(e, Unary) and e.op == "neg":
        p = polynomial(e.arg)
        return None if p is None else [-c for c in p]
    if isinstance(e, Bin) and e.op in "+-*":
        p, q = polynomial(e.left), polynomial(e.right)
        if p is None or q is None:
            return None
        if e.op == "*":
            out = [Fraction(0)] * (len(p) + len(q) - 1)
            for i, a in enumerate(p):
                for j, b in enumerate(q):
                    out[i + j] += a * b
            return out
        sign = 1 if e.op == "+" else -1
        n = max(len(p), len(q))
        p, q = p + [Fraction(0)] * (n - len(p)), q + [Fraction(0)] * (n - len(q))
        return [a + sign * b for a, b in zip(p, q)]
    return None


def compile_expr(src: Union[str, Expr], interval: Interval = UNIT) -> FnWithModulus:
    """Parse (if needed), derive the modulus and build the function on interval."""
    e = parse_expr(src) if isinstance(src, str) else src
    g = derive_modulus(e, interval)
    fn = RealFn(_evaluator(e, interval), interval, str(src))
    fn.polynomial = polynomial(e)
    return FnWithModulus(fn, g, interval)


def evaluate(e: Expr, x, interval: Interval = UNIT) -> Real:
    return _evaluator(e, interval)(R.as_real(x))
