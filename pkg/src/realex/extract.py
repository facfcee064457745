"""Unbounded search recovered from hypothetical modulus functionals.

Given a sequence f of naturals, put h(n) = 1 where f(n) = 0 and
x0 = sum_n h(n) 2**-n.  If n0 is the least zero of f then
2**-n0 <= x0 <= 2**(1 - n0).  The steep functions f2 = 1/(|x| + x0) and
f0 = exp(1/(x**2 + x0)) become steeper as x0 shrinks, so a valid modulus N
for them bounds x0 from below, hence n0 from above.  Each extractor asks its
functional for N, turns it into a search bound B(N) and searches f up to B.

The three bounds, writing L = N.bit_length() so that N < 2**L:

* pointwise continuity of f2 at 0 with k = 1: y = 1/(2N) is closer than 1/N,
  so 1 > f2(0) - f2(y) = y / (x0 (x0 + y)), i.e. x0**2 + y x0 > y.  For
  y <= 1/2 that forces x0 > sqrt(y)/2, and with x0 <= 2**(1 - n0) this gives
  n0 < 5/2 + L/2, so B = 2 + (L + 1) // 2.
* differentiability of f0 at 0 with k = 1: f0 is even, so the quotients at
  +e and -e are q and -q, and both lie within 1 of f0'(0) when |e| < 1/N.
  At e = sqrt(x0) and x0 <= 1, q = (e**(1/x0) - e**(1/(2x0))) / sqrt(x0) > 1,
  a contradiction unless sqrt(x0) >= 1/N.  Then 2**(1 - n0) >= 1/N**2 and
  n0 <= 2L, so B = 2L + 1.
* Riemann integration of f0 with k = 1: two partitions of mesh 1/(2N) < 1/N
  whose first cells carry tags 0 and sqrt(x0) have sums differing by
  (f0(0) - f0(sqrt(x0)))/(2N).  With t = 1/(2 x0) this is
  e**t (e**t - 1)/(2N) >= e**t (e**t - 1) sqrt(x0), which exceeds 1 once
  sqrt(x0) <= 1/(2N).  So x0 > 1/(4 N**2), n0 < 3 + 2L, and B = 2 + 2L.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional

from . import reals as R
from .functions import exp_upper, make_f0, make_f2

NatSeq = Callable[[int], int]


def omega_ca(F: Callable, phi: Callable) -> Callable:
    """G(x) = F(x, max phi(x)): F's value at the stabilisation point phi names."""
    return lambda x: F(x, max(phi(x)))


@dataclass(frozen=True)
class MuResult:
    found: Optional[int]
    search_bound: int
    query: int = 0


@dataclass(frozen=True)
class EventualSeq:
    """The sequence prefix followed by a constant tail; callable."""
    prefix: tuple
    tail: int = 1

    def __call__(self, n: int) -> int:
        return self.prefix[n] if n < len(self.prefix) else self.tail

    @property
    def least_zero(self) -> Optional[int]:
        if 0 in self.prefix:
            return self.prefix.index(0)
        return len(self.prefix) if self.tail == 0 else None


def zero_indicator(f: NatSeq) -> NatSeq:
    return lambda n: 1 if f(n) == 0 else 0


def x0_of(f: NatSeq) -> R.Real:
    """sum_n 2**-n over the zeros n of f."""
    return R.real_from_bits(zero_indicator(f))


def bound_mpc(N: int) -> int:
    return 2 + (max(N, 1).bit_length() + 1) // 2


def bound_dif(N: int) -> int:
    return 2 * max(N, 1).bit_length() + 1


def bound_rie(N: int) -> int:
    return 2 + 2 * max(N, 1).bit_length()


def _search(f: NatSeq, B: int, N: int) -> MuResult:
    hit = next((n for n in range(B + 1) if f(n) == 0), None)
    return MuResult(hit, B, N)


def mu_from_mpc(Xi: Callable, f: NatSeq) -> MuResult:
    """Search f for a zero, bounded via a pointwise-continuity functional.

    Xi(g, k, x) must be a modulus of continuity of g at x whenever g is
    continuous; it is queried once, on f2 at 0 with k = 1.
    """
    f2 = make_f2(x0_of(f))
    N = Xi(f2.fn, 1, R.from_rational(0))
    return _search(f, bound_mpc(N), N)


def mu_from_dif(XiD: Callable, f: NatSeq) -> MuResult:
    """As :func:`mu_from_mpc`, with XiD(g, k) a modulus of differentiability
    at 0, queried on f0."""
    f0 = make_f0(x0_of(f))
    N = XiD(f0.fn, 1)
    return _search(f, bound_dif(N), N)


def mu_from_rie(kappa: Callable, f: NatSeq) -> MuResult:
    """As :func:`mu_from_mpc`, with kappa(g, k) a modulus of Riemann
    integration on [0, 1], queried on f0."""
    f0 = make_f0(x0_of(f))
    N = kappa(f0.fn, 1)
    return _search(f, bound_rie(N), N)


# -- stand-in functionals -----------------------------------------------------

def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def oracle_moduli(family: str, x0_lower, kind: Optional[str] = None) -> Callable:
    """A modulus functional valid on the named family for every x0 >= x0_lower.

    Test infrastructure: it ignores the function it is handed and answers
    from the Lipschitz and second-derivative bounds that x0_lower implies.

    * ``"f2"``: Xi(g, k, x) = ceil(k / L**2), as f2 is 1/L**2-Lipschitz.
    * ``"f0"`` with kind ``"dif"``: N = ceil(k M2) + 1 where M2 bounds |f0''|
      on [-1, 1]; the difference quotient misses f0'(0) = 0 by <= M2 |e|/2.
    * ``"f0"`` with kind ``"rie"``: N = ceil(k M1) + 1 where M1 bounds |f0'|
      on [0, 1]; left sums of mesh < 1/N lie within M1/(2N) of the integral.
    * ``"const"``: every modulus is 1.
    """
    L = Fraction(x0_lower)
    if L <= 0:
        raise ValueError("x0_lower must be positive")
    if family == "const":
        return lambda g, k, *x: 1
    if family == "f2":
        lip = 1 / (L * L)
        return lambda g, k, x=None: max(1, _ceil(k * lip))
    if family != "f0":
        raise ValueError(f"unknown family {family!r}")
    grow = exp_upper(1 / L)
    if kind == "dif":
        M = grow * (4 / L ** 3 + 10 / L ** 2)
    elif kind == "rie":
        M = grow * 2 / (L * L)
    else:
        raise ValueError("the f0 family needs kind 'dif' or 'rie'")
    modulus = lru_cache(maxsize=None)(lambda k: _ceil(k * M) + 1)
    return lambda g, k: modulus(k)


# -- checking -----------------------------------------------------------------

@dataclass
class MuReport:
    checked: int = 0
    with_zero: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def mu_check(mu: Callable[[NatSeq], MuResult], suite: Iterable[EventualSeq]) -> MuReport:
    """Run mu on each sequence and list those with a zero where mu's answer
    is not one."""
    report = MuReport()
    for f in suite:
        report.checked += 1
        if f.least_zero is None:
            continue
        report.with_zero += 1
        found = mu(f).found
        if found is None or f(found) != 0:
            report.violations.append((f, found))
    return report
