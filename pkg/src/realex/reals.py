"""Exact reals as fast-converging Cauchy streams of rationals.

A :class:`Real` is a pure map ``n -> q_n`` with ``|q_n - q_{n+i}| <= 2**-n``
for all ``n, i``.  Every operation in this module assumes only that bound of
its inputs and delivers the stronger ``|q_n - x| <= 2**-(n+1)`` on its output,
so results compose without further bookkeeping.

Rational-valued reals carry their value in ``Real.exact``; operations on them
short-circuit to exact rational arithmetic.  The shortcut is invisible: the
stream of an exact real is the constant stream of its value.
"""
from __future__ import annotations

import enum
import math
from fractions import Fraction
from typing import Callable, Optional, Union

from .errors import DomainError, GuardViolation

Rational = Fraction
BitSeq = Callable[[int], int]
RationalLike = Union[int, Fraction]

__all__ = [
    "Real", "Ordering", "from_rational", "hat_regularize", "approx", "add",
    "sub", "neg", "mul", "absolute", "minimum", "maximum", "arith",
    "recip_guarded", "recip_searching", "exp_real", "sqrt_nonneg", "compare",
    "eq_upto", "real_from_bits", "binary_expansion", "exp_enclosure",
    "as_real",
]


def _pow2(n: int) -> Fraction:
    return Fraction(1, 1 << n) if n >= 0 else Fraction(1 << -n)


def _round_dyadic(q: Fraction, bits: int) -> Fraction:
    # nearest multiple of 2**-bits
    return Fraction(math.floor(q * (1 << bits) + Fraction(1, 2)), 1 << bits)


def _ceil_bits(q: Fraction) -> int:
    """Smallest b >= 0 with q <= 2**b (q > 0)."""
    return max(0, math.ceil(q).bit_length())


class Real:
    """A real number given by its approximation stream.

    ``fn`` is trusted to satisfy the fast-Cauchy bound; use
    :func:`hat_regularize` for streams of unknown quality.
    """

    __slots__ = ("_fn", "_cache", "exact")

    def __init__(self, fn: Callable[[int], Fraction], exact: Optional[Fraction] = None):
        self._fn = fn
        # dict get/set is atomic under the GIL; racing writers store equal values
        self._cache: dict[int, Fraction] = {}
        self.exact = exact

    def approx(self, n: int) -> Fraction:
        if self.exact is not None:
            return self.exact
        if n < 0:
            n = 0
        try:
            return self._cache[n]
        except KeyError:
            q = self._fn(n)
            self._cache[n] = q
            return q

    __call__ = approx

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"Real({self.exact})"
        return f"Real(~{float(self.approx(53)):.15g})"

    def __float__(self) -> float:
        return float(self.approx(60))

    def __neg__(self) -> Real:
        return neg(self)

    def __add__(self, other) -> Real:
        return add(self, as_real(other))

    __radd__ = __add__

    def __sub__(self, other) -> Real:
        return sub(self, as_real(other))

    def __rsub__(self, other) -> Real:
        return sub(as_real(other), self)

    def __mul__(self, other) -> Real:
        return mul(self, as_real(other))

    __rmul__ = __mul__

    def __abs__(self) -> Real:
        return absolute(self)


def from_rational(q: RationalLike) -> Real:
    q = Fraction(q)
    return Real(lambda n: q, exact=q)


def as_real(v) -> Real:
    if isinstance(v, Real):
        return v
    if isinstance(v, (int, Fraction)):
        return from_rational(v)
    raise TypeError(f"cannot lift {type(v).__name__} to Real")


def approx(x: Real, n: int) -> Fraction:
    """``[x](n)``: the n-th rational approximation of ``x``."""
    return x.approx(n)


def hat_regularize(raw: Callable[[int], RationalLike]) -> Real:
    """Turn an arbitrary rational stream into a Real.

    ``output(n) = raw(m(n))`` where ``m(n)`` is the largest ``m <= n`` whose
    prefix satisfies ``|raw(k) - raw(k+1)| <= 2**-(k+2)`` for all ``k < m``.
    Streams that already satisfy the gap bound pass through unchanged.
    """
    values: list[Fraction] = []
    broken_at: list[Optional[int]] = [None]

    def value(k: int) -> Fraction:
        while len(values) <= k:
            values.append(Fraction(raw(len(values))))
        return values[k]

    def valid_prefix(n: int) -> int:
        # index of the first failing gap, or n if none below n
        if broken_at[0] is not None and broken_at[0] < n:
            return broken_at[0]
        for k in range(n):
            if abs(value(k) - value(k + 1)) > _pow2(k + 2):
                broken_at[0] = k
                return k
        return n

    def fn(n: int) -> Fraction:
        return value(valid_prefix(n))

    return Real(fn)


# -- arithmetic ---------------------------------------------------------------

def add(x: Real, y: Real) -> Real:
    if x.exact is not None and y.exact is not None:
        return from_rational(x.exact + y.exact)
    return Real(lambda n: x.approx(n + 2) + y.approx(n + 2))


def neg(x: Real) -> Real:
    if x.exact is not None:
        return from_rational(-x.exact)
    return Real(lambda n: -x.approx(n + 1))


def sub(x: Real, y: Real) -> Real:
    return add(x, neg(y))


def _magnitude(x: Real) -> Fraction:
    """An upper bound on |x| read off the coarsest approximation."""
    if x.exact is not None:
        return abs(x.exact)
    return abs(x.approx(0)) + 1


def mul(x: Real, y: Real) -> Real:
    if x.exact is not None and y.exact is not None:
        return from_rational(x.exact * y.exact)
    if x.exact == 0 or y.exact == 0:
        return from_rational(0)
    shift = _ceil_bits(_magnitude(x) + _magnitude(y) + 1) + 2

    def fn(n: int) -> Fraction:
        p = n + shift
        return _round_dyadic(x.approx(p) * y.approx(p), n + 3)

    return Real(fn)


def absolute(x: Real) -> Real:
    if x.exact is not None:
        return from_rational(abs(x.exact))
    return Real(lambda n: abs(x.approx(n + 1)))


def minimum(x: Real, y: Real) -> Real:
    if x.exact is not None and y.exact is not None:
        return from_rational(min(x.exact, y.exact))
    return Real(lambda n: min(x.approx(n + 1), y.approx(n + 1)))


def maximum(x: Real, y: Real) -> Real:
    if x.exact is not None and y.exact is not None:
        return from_rational(max(x.exact, y.exact))
    return Real(lambda n: max(x.approx(n + 1), y.approx(n + 1)))


_BINARY = {"add": add, "sub": sub, "mul": mul, "min": minimum, "max": maximum}
_UNARY = {"neg": neg, "abs": absolute}


def arith(op: str, x: Real, y: Optional[Real] = None) -> Real:
    """Dispatch one of add, sub, mul, min, max, neg, abs by name."""
    if op in _UNARY:
        return _UNARY[op](x)
    if op in _BINARY:
        if y is None:
            raise TypeError(f"{op} needs two operands")
        return _BINARY[op](x, y)
    raise ValueError(f"unknown operation {op!r}")


def recip_guarded(x: Real, lower: RationalLike) -> Real:
    """1/x for x known to satisfy ``x >= lower > 0``.

    Raises GuardViolation from ``approx`` once an approximation certifies
    ``x < lower``.
    """
    lower = Fraction(lower)
    if lower <= 0:
        raise ValueError("lower bound must be positive")
    if x.exact is not None:
        if x.exact < lower:
            raise GuardViolation(f"{x.exact} < guard {lower}")
        return from_rational(1 / x.exact)
    shift = 2 + _ceil_bits(1 / (lower * lower))

    def fn(n: int) -> Fraction:
        p = n + shift
        q = x.approx(p)
        if q + _pow2(p) < lower:
            raise GuardViolation(f"approximation {q} certifies value below guard {lower}")
        return _round_dyadic(1 / max(q, lower), n + 3)

    return Real(fn)


def recip_searching(x: Real, limit: int = 4096) -> Real:
    """1/x for x > 0 with no lower bound supplied by the caller.

    Each approximation first searches precisions ``p <= limit`` for a
    certified positive lower bound ``[x](p) - 2**-p``.  Inputs too close to
    zero (or not positive) raise GuardViolation once the search is used up.
    """
    inner: list[Optional[Real]] = [None]

    def fn(n: int) -> Fraction:
        if inner[0] is None:
            for p in range(limit + 1):
                lb = x.approx(p) - _pow2(p)
                if lb > 0:
                    inner[0] = recip_guarded(x, lb)
                    break
            else:
                raise GuardViolation(f"no positive lower bound within precision {limit}")
        return inner[0].approx(n)

    return Real(fn)


# -- exp ----------------------------------------------------------------------

def _exp_fixed(z: Fraction, r: int, wp: int) -> tuple[int, int]:
    """Integer bounds lo <= e**(z * 2**r) * 2**wp <= hi, for 0 <= z <= 1/2."""
    one = 1 << wp
    scaled = z * one
    zlo, zhi = math.floor(scaled), math.ceil(scaled)
    lo = term = one
    j = 1
    while term:
        term = (term * zlo) // (j << wp)
        lo += term
        j += 1
    hi = term = one
    j = 1
    while True:
        term = -((-term * zhi) // (j << wp))
        hi += term
        j += 1
        if term <= 1:
            break
    hi += 1  # tail after a term of at most one ulp is at most one ulp
    for _ in range(r):
        lo = (lo * lo) >> wp
        hi = -((-hi * hi) >> wp)
    return lo, hi


def _exp_nonneg_bounds(q: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    r = 0
    z = q
    while z > Fraction(1, 2):
        z /= 2
        r += 1
    mag = math.ceil(q * Fraction(3, 2)) + 2  # log2(e) < 3/2
    wp = prec + mag + r + 16
    while True:
        lo, hi = _exp_fixed(z, r, wp)
        if hi - lo <= (1 << wp) >> (prec + 2):
            return Fraction(lo, 1 << wp), Fraction(hi, 1 << wp)
        wp += wp // 2


def exp_enclosure(q: RationalLike, prec: int) -> tuple[Fraction, Fraction]:
    """Dyadic bounds ``lo <= e**q <= hi`` with ``hi - lo <= 2**-prec``."""
    q = Fraction(q)
    if q == 0:
        return Fraction(1), Fraction(1)
    if q > 0:
        lo, hi = _exp_nonneg_bounds(q, prec)
    else:
        lo_p, hi_p = _exp_nonneg_bounds(-q, prec + 2)
        bits = prec + 2
        scale = 1 << bits
        lo = Fraction(math.floor(scale / hi_p), scale)
        hi = Fraction(math.ceil(scale / lo_p), scale)
    return lo, hi


def exp_real(x: Real, bound: RationalLike) -> Real:
    """e**x for x known to satisfy ``|x| <= bound``."""
    bound = Fraction(bound)
    if x.exact is not None:
        if abs(x.exact) > bound:
            raise GuardViolation(f"|{x.exact}| exceeds exp bound {bound}")
        if x.exact == 0:
            return from_rational(1)
    growth = (3 ** (math.ceil(bound) + 1)).bit_length()  # >= log2 e**(bound+1)

    def fn(n: int) -> Fraction:
        m = n + 3 + growth
        q = x.approx(m)
        if abs(q) - _pow2(m) > bound:
            raise GuardViolation(f"approximation {q} certifies |x| above exp bound {bound}")
        lo, hi = exp_enclosure(q, n + 3)
        return _round_dyadic((lo + hi) / 2, n + 4)

    return Real(fn)


def sqrt_nonneg(x: Real) -> Real:
    """sqrt(max(x, 0)); negative approximations are clamped to zero."""
    if x.exact is not None:
        q = max(x.exact, Fraction(0))
        rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
        if rn * rn == q.numerator and rd * rd == q.denominator:
            return from_rational(Fraction(rn, rd))

    def fn(n: int) -> Fraction:
        q = max(x.approx(2 * n + 4), Fraction(0))
        w = n + 3
        return Fraction(math.isqrt(math.floor(q * (1 << (2 * w)))), 1 << w)

    return Real(fn)


# -- order --------------------------------------------------------------------

class Ordering(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    WITHIN = "within-tolerance"


def compare(x: Real, y: Real, n: int) -> Ordering:
    """Three-valued comparison at precision n.

    LESS certifies x < y, GREATER certifies x > y; WITHIN only says
    |x - y| <= 2**-(n-2).
    """
    qx, qy = x.approx(n), y.approx(n)
    slack = _pow2(n - 1)
    if qx + slack < qy:
        return Ordering.LESS
    if qy + slack < qx:
        return Ordering.GREATER
    return Ordering.WITHIN


def eq_upto(x: Real, y: Real, n: int) -> bool:
    """Equality test at level n: |[x](n) - [y](n)| <= 2**-(n-1)."""
    return abs(x.approx(n) - y.approx(n)) <= _pow2(n - 1)


# -- bit sequences ------------------------------------------------------------

def real_from_bits(h: BitSeq) -> Real:
    """The real sum_{n>=0} h(n) / 2**n."""
    def fn(n: int) -> Fraction:
        top = n + 2
        total = 0
        for k in range(top + 1):
            if h(k):
                total += 1 << (top - k)
        return Fraction(total, 1 << top)

    return Real(fn)


def binary_expansion(x: RationalLike) -> BitSeq:
    """Bits b with x = sum_i b(i) / 2**(i+1); dyadics get the terminating form."""
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise DomainError(f"{x} is outside [0, 1]")
    if x == 1:
        return lambda i: 1
    num, den = x.numerator, x.denominator

    def bit(i: int) -> int:
        return ((num << (i + 1)) // den) & 1

    return bit
