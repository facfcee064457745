"""Real functions paired with moduli, and the steep-function gallery.

The gallery functions ``f2`` and ``f0`` are built from a positive real
``x0`` and are continuous (resp. smooth) for every ``x0 > 0``, but their
moduli blow up as ``x0`` shrinks.  The moduli here are computed from a
caller-known lower bound on ``x0``; without such a bound no modulus exists
that a program could produce.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import reals as R
from .errors import DomainError, GuardViolation, IncompatibleDomains
from .reals import Real, as_real

DOMAIN_CHECK_PRECISION = 32


@dataclass(frozen=True)
class Interval:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if self.a > self.b:
            raise ValueError(f"empty interval [{self.a}, {self.b}]")

    @property
    def width(self) -> Fraction:
        return self.b - self.a


UNIT = Interval(Fraction(0), Fraction(1))


class RealFn:
    """A map Real -> Real, optionally restricted to a closed rational interval.

    Implementations must map equal reals to equal reals; nothing here can
    enforce that, but the test-suite samples it.
    """

    def __init__(self, apply: Callable[[Real], Real], domain: Optional[Interval] = None,
                 name: str = "f"):
        self._apply = apply
        self.domain = domain
        self.name = name

    def __call__(self, x) -> Real:
        x = as_real(x)
        if self.domain is not None:
            _check_domain(x, self.domain)
        return self._apply(x)

    def __repr__(self) -> str:
        return f"RealFn({self.name})"


def _check_domain(x: Real, dom: Interval) -> None:
    if x.exact is not None:
        if not dom.a <= x.exact <= dom.b:
            raise DomainError(f"{x.exact} outside [{dom.a}, {dom.b}]")
        return
    n = DOMAIN_CHECK_PRECISION
    if (R.compare(x, R.from_rational(dom.a), n) is R.Ordering.LESS
            or R.compare(x, R.from_rational(dom.b), n) is R.Ordering.GREATER):
        raise DomainError(f"{x!r} certified outside [{dom.a}, {dom.b}]")


def eval_fn(f: RealFn, x) -> Real:
    return f(x)


# -- moduli -------------------------------------------------------------------

class _Modulus:
    """k -> N, made monotone by running maxima unless declared monotone."""

    def __init__(self, g: Callable[[int], int], monotone: bool = False):
        self._g = g
        self._monotone = monotone
        self._prefix_max: list[int] = [0]  # _prefix_max[k] = max g(1..k)

    def __call__(self, k: int) -> int:
        if k < 1:
            k = 1
        if self._monotone:
            return int(self._g(k))
        pm = self._prefix_max
        while len(pm) <= k:
            pm.append(max(pm[-1], int(self._g(len(pm)))))
        return pm[k]

    def __repr__(self) -> str:
        return f"{type(self).__name__}(1->{self(1)}, 10->{self(10)})"


class UniformModulus(_Modulus):
    """|x - y| < 1/g(k)  implies  |f(x) - f(y)| < 1/k."""


class DiffModulus(_Modulus):
    """Modulus of differentiability at a point."""


class IntModulus(_Modulus):
    """Partitions of mesh < 1/w(k) give Riemann sums within 1/k of each other."""


class PointwiseModulus:
    def __init__(self, g: Callable[[int, Real], int]):
        self._g = g

    def __call__(self, k: int, x: Real) -> int:
        # monotone in k by maximising over the dyadic ladder below k
        best, j = 0, 1
        while j < k:
            best = max(best, int(self._g(j, x)))
            j *= 2
        return max(best, int(self._g(k, x)))


def linear_modulus(lipschitz: Fraction, cls=UniformModulus) -> _Modulus:
    """g(k) = ceil(k * L), at least 1: valid for any L-Lipschitz function."""
    lip = Fraction(lipschitz)
    return cls(lambda k: max(1, math.ceil(k * lip)), monotone=True)


@dataclass
class FnWithModulus:
    fn: RealFn
    modulus: _Modulus
    domain: Interval = field(default=UNIT)
    kind: str = "uniform"

    def __call__(self, x) -> Real:
        return self.fn(x)


# -- combinators --------------------------------------------------------------

def magnitude_bound(f: FnWithModulus) -> int:
    """An integer M with |f(x)| <= M on the domain.

    Walks from the left endpoint in steps shorter than 1/g(1); each step moves
    f by less than 1.
    """
    dom = f.domain
    start = abs(f(dom.a).approx(0)) + 1
    steps = math.floor(dom.width * f.modulus(1)) + 1
    return math.ceil(start) + steps


def _same_domain(f: FnWithModulus, g: FnWithModulus) -> Interval:
    if f.domain != g.domain:
        raise IncompatibleDomains(f"{f.domain} vs {g.domain}")
    return f.domain


def add_fn(f: FnWithModulus, g: FnWithModulus) -> FnWithModulus:
    dom = _same_domain(f, g)
    fn = RealFn(lambda x: R.add(f.fn(x), g.fn(x)), dom, f"({f.fn.name}+{g.fn.name})")
    mod = UniformModulus(lambda k: max(f.modulus(2 * k), g.modulus(2 * k)), monotone=True)
    return FnWithModulus(fn, mod, dom)


def mul_fn(f: FnWithModulus, g: FnWithModulus) -> FnWithModulus:
    dom = _same_domain(f, g)
    mf, mg = magnitude_bound(f), magnitude_bound(g)
    fn = RealFn(lambda x: R.mul(f.fn(x), g.fn(x)), dom, f"({f.fn.name}*{g.fn.name})")
    # |fg(x)-fg(y)| <= |f(x)||g(x)-g(y)| + |g(y)||f(x)-f(y)|
    mod = UniformModulus(lambda k: max(f.modulus(2 * k * mg), g.modulus(2 * k * mf)),
                         monotone=True)
    return FnWithModulus(fn, mod, dom)


def compose_fn(outer: FnWithModulus, inner: FnWithModulus) -> FnWithModulus:
    """outer(inner(x)); the caller guarantees inner maps into outer's domain."""
    dom = inner.domain
    fn = RealFn(lambda x: outer.fn(inner.fn(x)), dom, f"{outer.fn.name}o{inner.fn.name}")
    mod = UniformModulus(lambda k: inner.modulus(outer.modulus(k)), monotone=True)
    return FnWithModulus(fn, mod, dom)


def scale_fn(c, f: FnWithModulus) -> FnWithModulus:
    c = Fraction(c)
    cr = R.from_rational(c)
    fn = RealFn(lambda x: R.mul(cr, f.fn(x)), f.domain, f"{c}*{f.fn.name}")
    if c == 0:
        return FnWithModulus(fn, UniformModulus(lambda k: 1, monotone=True), f.domain)
    factor = math.ceil(abs(c))
    return FnWithModulus(fn, UniformModulus(lambda k: f.modulus(k * factor), monotone=True),
                         f.domain)


def combine_with_modulus(op: str, f: FnWithModulus, g=None) -> FnWithModulus:
    """Dispatch add, mul, compose (g inside f) or scale (g is the factor)."""
    if op == "add":
        return add_fn(f, g)
    if op == "mul":
        return mul_fn(f, g)
    if op == "compose":
        return compose_fn(f, g)
    if op == "scale":
        return scale_fn(g, f)
    raise ValueError(f"unknown combinator {op!r}")


def identity(domain: Interval = UNIT) -> FnWithModulus:
    return FnWithModulus(RealFn(lambda x: x, domain, "x"), linear_modulus(1), domain)


def constant(c, domain: Interval = UNIT) -> FnWithModulus:
    cr = as_real(Fraction(c)) if not isinstance(c, Real) else c
    return FnWithModulus(RealFn(lambda x: cr, domain, str(c)),
                         UniformModulus(lambda k: 1, monotone=True), domain)


# -- gallery ------------------------------------------------------------------

def exp_upper(t: Fraction) -> int:
    """An integer >= e**t for t >= 0 (uses 3 > e)."""
    return 3 ** math.ceil(t)


def make_f2(x0: Real, lower: Optional[Fraction] = None) -> FnWithModulus:
    """x -> 1/(|x| + x0) on [0, 1].

    With ``lower`` (a guaranteed ``x0 >= lower > 0``) the function is
    1/lower**2-Lipschitz and gets the modulus ceil(k/lower**2).  Without it
    the reciprocal searches for its own lower bound and no modulus is known;
    the returned modulus is then a placeholder that is only correct for
    ``x0 >= 1``.
    """
    if lower is None:
        recip = R.recip_searching
        lip = Fraction(1)
    else:
        lower = Fraction(lower)
        if x0.exact is not None and x0.exact < lower:
            raise GuardViolation(f"x0 = {x0.exact} below guard {lower}")
        recip = lambda t: R.recip_guarded(t, lower)  # noqa: E731
        lip = 1 / (lower * lower)
    fn = RealFn(lambda x: recip(R.add(R.absolute(x), x0)), None, "f2")
    return FnWithModulus(fn, linear_modulus(lip), UNIT)


def make_f0(x0: Real, lower: Optional[Fraction] = None) -> FnWithModulus:
    """x -> exp(1/(x**2 + x0)), defined on the whole line.

    The modulus is valid on [0, 1] from the Lipschitz bound
    e**(1/lower) * 2/lower**2 of the derivative there.
    """
    if lower is None:
        fn = RealFn(lambda x: _f0_unguarded(x, x0), None, "f0")
        return FnWithModulus(fn, linear_modulus(1), UNIT)
    lower = Fraction(lower)
    if x0.exact is not None and x0.exact < lower:
        raise GuardViolation(f"x0 = {x0.exact} below guard {lower}")
    cap = 1 / lower

    def apply(x: Real) -> Real:
        inner = R.recip_guarded(R.add(R.mul(x, x), x0), lower)
        return R.exp_real(inner, cap)

    lip = exp_upper(cap) * 2 * cap * cap
    return FnWithModulus(RealFn(apply, None, "f0"), linear_modulus(lip), UNIT)


def _f0_unguarded(x: Real, x0: Real) -> Real:
    denom = R.add(R.mul(x, x), x0)
    inner = R.recip_searching(denom)

    def fn(n: int) -> Fraction:
        # the exponent's size is only known after the reciprocal has found its bound
        cap = abs(inner.approx(0)) + 1
        return R.exp_real(inner, cap).approx(n)

    return Real(fn)


def _b(q: Fraction) -> Fraction:
    return q if q != 0 else Fraction(1)


def make_f1(f0: FnWithModulus | RealFn, h: R.BitSeq) -> RealFn:
    """f0, shifted by +1 wherever h has a one at some n <= 1/b([x](1)).

    Reads the precision-1 approximation of the *representation* it is given,
    so it is not extensional when h is nonzero; it carries no modulus.
    An empty index range (negative bound) counts as all zeros.
    """
    base = f0.fn if isinstance(f0, FnWithModulus) else f0

    def apply(x: Real) -> Real:
        bound = 1 / _b(x.approx(1))
        top = math.floor(bound)
        if all(h(n) == 0 for n in range(0, top + 1)):
            return base(x)
        return R.add(base(x), R.from_rational(1))

    return RealFn(apply, None, "f1")


# -- checking -----------------------------------------------------------------

def modulus_violations(f: FnWithModulus, ks: Sequence[int],
                       max_points: int = 4096) -> list[tuple[int, Fraction, Fraction]]:
    """Grid check of a uniform modulus.

    For each k, walks the domain at resolution 1/(2 g(k)) (coarsened to at
    most ``max_points`` points) and compares neighbours closer than 1/g(k).
    Returns the offending (k, x, y) triples.
    """
    bad = []
    dom = f.domain
    for k in ks:
        g = f.modulus(k)
        step = Fraction(1, 2 * g)
        count = math.floor(dom.width / step)
        stride = max(1, math.ceil(count / max_points))
        prec = k + 4
        tol = Fraction(1, k) + Fraction(1, 1 << (k + 2))
        prev_x, prev_v = None, None
        for i in range(0, count + 1, stride):
            x = dom.a + i * step
            v = f(x).approx(prec)
            if prev_x is not None and x - prev_x < Fraction(1, g):
                if abs(v - prev_v) >= tol:
                    bad.append((k, prev_x, x))
            # also probe the half-step neighbour, which always lies within 1/g
            y = min(x + step, dom.b)
            w = f(y).approx(prec)
            if abs(w - v) >= tol:
                bad.append((k, x, y))
            prev_x, prev_v = x, v
    return bad
