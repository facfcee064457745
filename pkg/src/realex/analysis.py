"""Root finding, maximisation, suprema and Riemann integration with moduli.

Every routine here takes its moduli as input and returns an exact Real or a
grid point whose contract follows from those moduli alone; nothing is
estimated numerically.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from . import reals as R
from .errors import DomainError, SignPrecondition
from .functions import (UNIT, FnWithModulus, IntModulus, Interval, RealFn,
                        make_f0)
from .reals import Ordering, Real, as_real, from_rational

# coarse precisions tried before the requested one when deciding a sign
_SIGN_LADDER = (8, 24, 64)


def _pow2(n: int) -> Fraction:
    return Fraction(1, 1 << n)


def approx_nonneg(v: Real, prec: int) -> bool:
    """Decide ``[v](prec) >= 0``.

    Cheaper coarse approximations settle most cases: for c <= prec the
    fast-Cauchy bound gives |[v](c) - [v](prec)| <= 2**-c.
    """
    if v.exact is not None:
        return v.exact >= 0
    for c in _SIGN_LADDER:
        if c >= prec:
            break
        q = v.approx(c)
        if q + _pow2(c) < 0:
            return False
        if q - _pow2(c) >= 0:
            return True
    return v.approx(prec) >= 0


@dataclass(frozen=True)
class Fuel:
    """A finite bound standing in for an unboundedly large number."""
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("fuel must be at least 1")


def _fuel(n) -> int:
    return n.n if isinstance(n, Fuel) else int(n)


# -- intermediate value -------------------------------------------------------

def grid_index(f: Callable, N: int, a: Fraction, b: Fraction,
               precision: Optional[int] = None) -> Optional[int]:
    """Least j <= N with [f(a + j(b-a)/N)](precision) >= 0, or None."""
    prec = N if precision is None else precision
    h = (b - a) / N
    for j in range(N + 1):
        if approx_nonneg(f(from_rational(a + j * h)), prec):
            return j
    return None


def grid_term(f: Callable, N, a=0, b=1, precision: Optional[int] = None) -> Real:
    """The first grid point of spacing (b-a)/N where f's approximation turns
    nonnegative; b when there is none.

    ``precision`` defaults to N.
    """
    N = _fuel(N)
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    j = grid_index(f, N, a, b, precision)
    if j is None:
        return from_rational(b)
    return from_rational(a + j * (b - a) / N)


def ivt_precision(f: FnWithModulus, k: int) -> int:
    return max(f.modulus(4 * k), k + 4)


def ivt_grid_size(f: FnWithModulus, k: int) -> int:
    """Least power of two N with (b - a)/N < 1/g(4k)."""
    bound = f.domain.width * f.modulus(4 * k)
    N = 1
    while N <= bound:
        N *= 2
    return N


def ivt_ef(f: FnWithModulus, k: int) -> Real:
    """A point x* in [a, b] with |f(x*)| < 1/k.

    Needs f(a) < 0 < f(b), certified at precision max(g(4k), k+4); raises
    SignPrecondition otherwise.  A wrong modulus silently voids the bound.
    """
    a, b = f.domain.a, f.domain.b
    p = ivt_precision(f, k)
    zero = from_rational(0)
    if R.compare(f(a), zero, p) is not Ordering.LESS:
        raise SignPrecondition(f"f({a}) < 0 not certified at precision {p}")
    if R.compare(f(b), zero, p) is not Ordering.GREATER:
        raise SignPrecondition(f"f({b}) > 0 not certified at precision {p}")
    N = ivt_grid_size(f, k)
    return grid_term(f, N, a, b, precision=p)


# -- totally bounded sets and maxima ------------------------------------------

@dataclass
class TotallyBoundedSet:
    """A set presented by a dense sequence and a modulus of total boundedness.

    For every k and every member x some index n <= tb_modulus(k) has
    |seq(n) - x| < 1/k.
    """
    seq: Callable[[int], Real]
    tb_modulus: Callable[[int], int]

    def point(self, n: int) -> Real:
        return as_real(self.seq(n))


def dyadic_point(n: int, dom: Interval = UNIT) -> Fraction:
    """n-th dyadic of [a, b] listed level by level: a, b, mid, quarters, ..."""
    if n == 0:
        return dom.a
    if n == 1:
        return dom.b
    level = (n - 1).bit_length()
    t = n - (1 << (level - 1)) - 1
    return dom.a + Fraction(2 * t + 1, 1 << level) * dom.width


def dyadic_net(dom: Interval = UNIT) -> TotallyBoundedSet:
    """All of [a, b] with the dyadic enumeration; tb_modulus(k) = 2 ceil(k (b-a))."""
    return TotallyBoundedSet(
        seq=lambda n: from_rational(dyadic_point(n, dom)),
        tb_modulus=lambda k: 2 * max(1, math.ceil(k * dom.width)),
    )


def finite_set(points: Sequence) -> TotallyBoundedSet:
    pts = [as_real(Fraction(p) if not isinstance(p, Real) else p) for p in points]
    if not pts:
        raise ValueError("empty set")
    last = len(pts) - 1
    return TotallyBoundedSet(seq=lambda n: pts[min(n, last)], tb_modulus=lambda k: last)


def evt_index(f: FnWithModulus, X: TotallyBoundedSet, k: int) -> int:
    """Tournament over the net: keep the current leader unless a later point
    is strictly larger at precision k+4 (so ties go to the least index)."""
    bound = X.tb_modulus(f.modulus(2 * k))
    prec = k + 4
    best_n, best_v = 0, f(X.point(0)).approx(prec)
    for n in range(1, bound + 1):
        v = f(X.point(n)).approx(prec)
        if v > best_v:
            best_n, best_v = n, v
    return best_n


def evt_ef(f: FnWithModulus, X: TotallyBoundedSet, k: int) -> Real:
    """A net point x* with f(x) <= f(x*) + 1/k for every x in X."""
    return X.point(evt_index(f, X, k))


def sup_tb(X: TotallyBoundedSet) -> Real:
    """The supremum of X.

    The k-th approximation is [max_{i<=B} x_i](k+3) with B = tb_modulus(2**(k+2)).
    """
    def fn(k: int) -> Fraction:
        bound = X.tb_modulus(1 << (k + 2))
        top = X.point(0)
        for i in range(1, bound + 1):
            top = R.maximum(top, X.point(i))
        return top.approx(k + 3)

    return Real(fn)


# -- Riemann sums -------------------------------------------------------------

@dataclass
class Partition:
    """Cut points x_0 < ... < x_M and one tag t_i in each [x_i, x_{i+1}].

    ``uniform`` records (a, b, M, offset) for equidistant partitions with
    tags at a + (i + offset)(b - a)/M; it enables a closed-form sum for
    polynomials.
    """
    cuts: list
    tags: list
    uniform: Optional[tuple] = None

    def __post_init__(self):
        self.cuts = [as_real(Fraction(c) if not isinstance(c, Real) else c) for c in self.cuts]
        self.tags = [as_real(Fraction(t) if not isinstance(t, Real) else t) for t in self.tags]
        if len(self.cuts) != len(self.tags) + 1 or not self.tags:
            raise ValueError("need M >= 1 tags and M + 1 cut points")

    @property
    def M(self) -> int:
        return len(self.tags)

    def points(self) -> list:
        """The interleaved sequence (x_0, t_0, x_1, t_1, ..., t_{M-1}, x_M)."""
        out = []
        for x, t in zip(self.cuts, self.tags):
            out += [x, t]
        out.append(self.cuts[-1])
        return out

    def validate(self, precision: int = 32) -> None:
        """Raise DomainError if some adjacent pair is certified out of order."""
        pts = self.points()
        for i, (p, q) in enumerate(zip(pts, pts[1:])):
            if R.compare(p, q, precision) is Ordering.GREATER:
                raise DomainError(f"partition points {i} and {i + 1} are out of order")

    @classmethod
    def equidistant(cls, M: int, a=0, b=1, tag: str = "left") -> Partition:
        a, b = Fraction(a), Fraction(b)
        offset = {"left": Fraction(0), "mid": Fraction(1, 2), "right": Fraction(1)}[tag]
        h = (b - a) / M
        cuts = [a + i * h for i in range(M + 1)]
        tags = [a + (i + offset) * h for i in range(M)]
        return cls(cuts, tags, uniform=(a, b, M, offset))


def mesh(p: Partition) -> Real:
    widths = [R.sub(q, r) for r, q in zip(p.cuts, p.cuts[1:])]
    out = widths[0]
    for w in widths[1:]:
        out = R.maximum(out, w)
    return out


def _power_sums(M: int, degree: int) -> list[int]:
    """S_j = sum_{i<M} i**j for j <= degree, from
    M**(j+1) = sum_{t<=j} C(j+1, t) S_t."""
    sums: list[int] = []
    for j in range(degree + 1):
        acc = M ** (j + 1)
        for t in range(j):
            acc -= math.comb(j + 1, t) * sums[t]
        sums.append(acc // (j + 1))
    return sums


def _shifted_coeffs(coeffs: Sequence[Fraction], c: Fraction, h: Fraction) -> list[Fraction]:
    """Coefficients of i -> P(c + h i) given P's ascending coefficients."""
    out = [Fraction(0)] * len(coeffs)
    for deg, a in enumerate(coeffs):
        if a == 0:
            continue
        for t in range(deg + 1):
            out[t] += a * math.comb(deg, t) * c ** (deg - t) * h ** t
    return out


def _uniform_polynomial_sum(coeffs, a, b, M, offset) -> Fraction:
    h = (b - a) / M
    d = _shifted_coeffs(coeffs, a + offset * h, h)
    sums = _power_sums(M, len(d) - 1)
    return h * sum(dj * sj for dj, sj in zip(d, sums))


def riemann_sum(f, p: Partition) -> Real:
    """S_p(f) = sum_i f(t_i)(x_{i+1} - x_i), as a Real."""
    fn = f.fn if isinstance(f, FnWithModulus) else f
    coeffs = getattr(fn, "polynomial", None)
    if coeffs is not None and p.uniform is not None:
        return from_rational(_uniform_polynomial_sum(coeffs, *p.uniform))
    terms = [R.mul(fn(t), R.sub(q, r)) for t, r, q in zip(p.tags, p.cuts, p.cuts[1:])]
    if all(t.exact is not None for t in terms):
        return from_rational(sum((t.exact for t in terms), Fraction(0)))
    extra = max(0, (p.M - 1).bit_length()) + 2

    def fn_sum(n: int) -> Fraction:
        return sum((t.approx(n + extra) for t in terms), Fraction(0))

    return Real(fn_sum)


def integration_modulus(f: FnWithModulus) -> IntModulus:
    """omega(k) = g(2k ceil(b - a)) from a uniform modulus g."""
    if f.kind == "integration":
        return f.modulus
    span = max(1, math.ceil(f.domain.width))
    g = f.modulus
    return IntModulus(lambda k: g(2 * k * span), monotone=True)


def partition_size(width: Fraction, omega_k: int) -> int:
    """Least M with width/M < 1/omega_k."""
    return math.floor(width * omega_k) + 1


def integrate_ef(f: FnWithModulus) -> Real:
    """The Riemann integral over f's domain.

    The n-th approximation is [S_pi](n+2) for the left-tagged equidistant
    partition pi of mesh < 1/omega(2**(n+2)); any partition of that mesh
    lies within 2**-(n+2) of the integral, so the stream is fast-Cauchy.
    """
    omega = integration_modulus(f)
    dom = f.domain
    coeffs = getattr(f.fn, "polynomial", None)

    def fn(n: int) -> Fraction:
        M = partition_size(dom.width, omega(1 << (n + 2)))
        if coeffs is not None:
            # same value riemann_sum gives, without materialising the partition
            return _uniform_polynomial_sum(coeffs, dom.a, dom.b, M, Fraction(0))
        return riemann_sum(f, Partition.equidistant(M, dom.a, dom.b)).approx(n + 2)

    return Real(fn)


# -- the jump of f0 -----------------------------------------------------------

def riemann_jump_partitions(m: int) -> tuple[Partition, Partition]:
    """Two partitions of [0, 1] that differ only in the first tag, 0 vs sqrt(2**-m).

    Both are equidistant with mesh 2**-floor(m/2), the finest dyadic mesh
    whose first cell still contains sqrt(2**-m).
    """
    s = m // 2
    M = 1 << s
    left = Partition.equidistant(M)
    moved = Partition(left.cuts, [R.sqrt_nonneg(from_rational(Fraction(1, 1 << m)))]
                      + left.tags[1:])
    return left, moved


def riemann_jump_demo(m: int) -> tuple[Real, Real]:
    """Riemann sums of f0 (with x0 = 2**-m) over the two partitions above.

    They differ by (e**(2**m) - e**(2**(m-1))) * 2**-floor(m/2) > 2**m.
    """
    if not 0 <= m <= 8:
        raise DomainError("m must lie in 0..8")
    x0 = Fraction(1, 1 << m)
    f0 = make_f0(from_rational(x0), x0)
    left, moved = riemann_jump_partitions(m)
    return riemann_sum(f0, left), riemann_sum(f0, moved)
