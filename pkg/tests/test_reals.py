from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from realex import reals as R
from realex.errors import DomainError, GuardViolation
from realex.reals import Ordering, from_rational

from _support import close, gap_violations, mp, noisy

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=64)


# -- hat ----------------------------------------------------------------------

def test_hat_constant_stream():
    x = R.hat_regularize(lambda n: Fraction(1, 3))
    assert all(x.approx(n) == Fraction(1, 3) for n in range(40))


def test_hat_truncates_at_first_violation():
    x = R.hat_regularize(lambda n: 0 if n == 0 else 5)
    assert all(x.approx(n) == 0 for n in range(20))


def test_hat_identity_on_partial_sums_of_halves():
    raw = lambda n: 2 - Fraction(1, 1 << n)  # noqa: E731  sum_{k<=n} 2**-k
    x = R.hat_regularize(raw)
    # consecutive gaps are 2**-(n+1), larger than 2**-(n+2), so the rule keeps raw(0)
    assert x.approx(10) == raw(0)
    assert not gap_violations(x, range(0, 65, 8), (1, 7, 64))


def test_hat_identity_on_fast_stream():
    raw = lambda n: 2 - Fraction(1, 1 << (2 * n + 2))  # noqa: E731  gaps <= 2**-(n+2)
    x = R.hat_regularize(raw)
    assert all(x.approx(n) == raw(n) for n in range(64))
    assert not gap_violations(x, range(0, 65, 8), (1, 7, 64))


@given(st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=1 << 12),
                min_size=1, max_size=30))
@settings(max_examples=200, deadline=None)
def test_hat_idempotent_and_fast_cauchy(values):
    raw = lambda n: values[min(n, len(values) - 1)]  # noqa: E731
    x = R.hat_regularize(raw)
    y = R.hat_regularize(x.approx)
    assert all(x.approx(n) == y.approx(n) for n in range(35))
    assert not gap_violations(x, range(0, 30, 3), (1, 3, 9))


# -- approx and arithmetic ----------------------------------------------------

def test_approx_examples():
    assert R.approx(from_rational(Fraction(1, 2)), 10) == Fraction(1, 2)
    e3 = R.real_from_bits(lambda n: int(n == 3))
    assert abs(R.approx(e3, 5) - Fraction(1, 8)) <= Fraction(1, 32)
    e = R.exp_real(from_rational(1), 1)
    assert close(e, mpmath.e, 20)


def test_add_sixths():
    s = R.add(noisy(Fraction(1, 3)), noisy(Fraction(1, 6), 1))
    half = from_rational(Fraction(1, 2))
    assert all(R.eq_upto(s, half, n) for n in range(1, 40))


@given(rationals)
def test_mul_by_zero(q):
    z = R.mul(noisy(q), from_rational(0))
    assert all(abs(z.approx(n)) <= Fraction(1, 1 << (n + 1)) for n in range(0, 30, 3))
    assert R.mul(from_rational(q), from_rational(0)).approx(7) == 0


@given(rationals)
def test_abs_of_x_minus_x(q):
    x = noisy(q)
    d = R.absolute(R.add(x, R.neg(x)))
    assert all(d.approx(n) <= Fraction(4, 1 << n) for n in range(0, 40, 3))


@given(rationals, rationals)
@settings(max_examples=60, deadline=None)
def test_arith_matches_rationals(p, q):
    x, y = noisy(p, 1), noisy(q, 2)
    expected = {"add": p + q, "sub": p - q, "mul": p * q, "min": min(p, q), "max": max(p, q)}
    for op, value in expected.items():
        r = R.arith(op, x, y)
        for n in (0, 5, 17, 40):
            assert abs(r.approx(n) - value) <= Fraction(4, 1 << n), op
        assert not gap_violations(r, range(0, 25, 6), (1, 9))
    for op, value in {"neg": -p, "abs": abs(p)}.items():
        assert abs(R.arith(op, x).approx(30) - value) <= Fraction(4, 1 << 30)


def test_exact_shortcut_matches_stream():
    p, q = Fraction(2, 7), Fraction(-5, 3)
    fast = R.mul(from_rational(p), from_rational(q))
    slow = R.mul(noisy(p), noisy(q, 3))
    assert fast.exact == p * q
    assert all(R.eq_upto(fast, slow, n) for n in range(1, 40, 3))


# -- reciprocal, exp, sqrt ----------------------------------------------------

def test_recip_examples():
    assert R.recip_guarded(from_rational(2), 1).approx(10) == Fraction(1, 2)
    x = R.real_from_bits(lambda n: int(n == 4))
    assert abs(R.recip_guarded(x, Fraction(1, 16)).approx(10) - 16) <= Fraction(1, 1024)
    y = R.real_from_bits(lambda n: int(n in (4, 8)))
    r = R.recip_guarded(y, Fraction(1, 16))
    assert abs(r.approx(20) - Fraction(256, 17)) <= Fraction(1, 1 << 20)
    assert not gap_violations(r)


def test_recip_guard_violation():
    with pytest.raises(GuardViolation):
        R.recip_guarded(from_rational(Fraction(1, 4)), Fraction(1, 2))
    with pytest.raises(GuardViolation):
        R.recip_guarded(noisy(Fraction(1, 4)), Fraction(1, 2)).approx(10)


def test_recip_searching_finds_its_bound():
    r = R.recip_searching(noisy(Fraction(3, 1000)))
    assert abs(r.approx(12) - Fraction(1000, 3)) <= Fraction(1, 1 << 12)
    with pytest.raises(GuardViolation):
        R.recip_searching(noisy(0), limit=40).approx(3)


def test_exp_examples():
    assert R.exp_real(from_rational(0), 1).approx(5) == 1
    assert close(R.exp_real(from_rational(1), 1), mpmath.e, 30)
    big = R.exp_real(from_rational(16), 16)
    assert close(big, mpmath.exp(16), 10)


@given(st.fractions(min_value=-6, max_value=6, max_denominator=50))
@settings(max_examples=40, deadline=None)
def test_exp_against_mpmath(q):
    x = R.exp_real(noisy(q), 6)
    assert close(x, mpmath.exp(mp(q)), 24)
    assert not gap_violations(x, range(0, 25, 8), (1, 8))


def test_exp_enclosure_is_tight_and_sound():
    for q in (Fraction(1, 3), Fraction(-7, 2), Fraction(40), Fraction(256)):
        lo, hi = R.exp_enclosure(q, 30)
        assert mp(lo) <= mpmath.exp(mp(q)) <= mp(hi)
        assert hi - lo <= Fraction(1, 1 << 30)


def test_exp_bound_violation():
    with pytest.raises(GuardViolation):
        R.exp_real(from_rational(3), 2)


def test_sqrt_examples():
    assert R.sqrt_nonneg(from_rational(0)).approx(10) == 0
    assert R.sqrt_nonneg(from_rational(Fraction(1, 4))).approx(10) == Fraction(1, 2)
    s = R.sqrt_nonneg(from_rational(2))
    assert close(s, mpmath.sqrt(2), 20)
    assert not gap_violations(s)
    assert close(R.sqrt_nonneg(noisy(Fraction(1, 9))), mpmath.mpf(1) / 3, 30)


# -- order --------------------------------------------------------------------

def test_compare_examples():
    zero, one = from_rational(0), from_rational(1)
    assert R.compare(zero, one, 4) is Ordering.LESS
    small = from_rational(Fraction(1, 1024))
    assert R.compare(small, zero, 4) is Ordering.WITHIN
    assert R.compare(small, zero, 16) is Ordering.GREATER


@given(rationals, st.integers(0, 40))
def test_compare_reflexive(q, n):
    x = noisy(q)
    assert R.compare(x, x, n) is Ordering.WITHIN


@given(rationals, rationals, st.integers(0, 30))
def test_compare_sound(p, q, n):
    verdict = R.compare(noisy(p, 4), noisy(q, 5), n)
    if verdict is Ordering.LESS:
        assert p < q
    elif verdict is Ordering.GREATER:
        assert p > q
    else:
        assert abs(p - q) <= Fraction(4, 1 << n) if n >= 2 else True


@given(rationals)
def test_eq_upto_two_representations(q):
    assert all(R.eq_upto(from_rational(q), noisy(q, 9), n) for n in range(1, 40, 3))


# -- bits ---------------------------------------------------------------------

def test_real_from_bits_examples():
    assert R.real_from_bits(lambda n: 0).approx(20) == 0
    for m in (0, 3, 9):
        assert abs(R.real_from_bits(lambda n: int(n == m)).approx(20) - Fraction(1, 1 << m)) \
            <= Fraction(1, 1 << 20)
    ones = R.real_from_bits(lambda n: 1)
    for n in range(33):
        assert abs(ones.approx(n) - 2) <= Fraction(1, 1 << n)
    assert not gap_violations(ones)


def test_binary_expansion_examples():
    half = R.binary_expansion(Fraction(1, 2))
    assert [half(i) for i in range(6)] == [1, 0, 0, 0, 0, 0]
    third = R.binary_expansion(Fraction(1, 3))
    assert [third(i) for i in range(8)] == [0, 1, 0, 1, 0, 1, 0, 1]
    assert [R.binary_expansion(1)(i) for i in range(5)] == [1] * 5
    with pytest.raises(DomainError):
        R.binary_expansion(Fraction(3, 2))


@given(st.integers(1, 1000).flatmap(lambda b: st.tuples(st.integers(0, b), st.just(b))))
def test_binary_expansion_long_division(ab):
    a, b = ab
    q = Fraction(a, b)
    bits = R.binary_expansion(q)
    # long-division oracle
    rem, expected = a, []
    for _ in range(40):
        rem *= 2
        expected.append(int(rem >= b) if q < 1 else 1)
        if q < 1 and rem >= b:
            rem -= b
    assert [bits(i) for i in range(40)] == expected
    partial = sum(Fraction(bits(i), 1 << (i + 1)) for i in range(40))
    assert 0 <= q - partial <= Fraction(1, 1 << 40)
