import random
from fractions import Fraction

import pytest

from realex import reals as R
from realex.extract import (EventualSeq, MuResult, bound_dif, bound_mpc, bound_rie, mu_check,
                            mu_from_dif, mu_from_mpc, mu_from_rie, omega_ca, oracle_moduli,
                            x0_of)
from realex.functions import make_f0, make_f2
from realex.reals import from_rational

ORACLES = {
    "mpc": (mu_from_mpc, lambda L: oracle_moduli("f2", L)),
    "dif": (mu_from_dif, lambda L: oracle_moduli("f0", L, "dif")),
    "rie": (mu_from_rie, lambda L: oracle_moduli("f0", L, "rie")),
}


def run(mode, f, lower=None):
    mu, oracle = ORACLES[mode]
    n0 = f.least_zero
    if lower is None:
        lower = Fraction(1, 1 << (n0 if n0 is not None else 16))
    return mu(oracle(lower), f)


def seq_with_zero_at(*zeros, length=18):
    return EventualSeq(tuple(0 if i in zeros else 1 for i in range(length)))


# -- omega_ca -----------------------------------------------------------------

def test_omega_ca_examples():
    G = omega_ca(lambda x, n: x if n >= 3 else 0, lambda x: {3})
    assert [G(x) for x in range(5)] == list(range(5))
    G = omega_ca(lambda x, n: min(x, n), lambda x: {x})
    assert [G(x) for x in range(5)] == list(range(5))
    F = lambda x, n: 2 * x + 1  # noqa: E731
    G = omega_ca(F, lambda x: {0})
    assert all(G(x) == F(x, 0) for x in range(5))


def test_omega_ca_stability():
    F = lambda x, n: min(x * x, n) + 3  # noqa: E731
    phi = lambda x: {x, x * x, 1}  # noqa: E731
    G = omega_ca(F, phi)
    for x in range(8):
        top = max(phi(x))
        assert all(G(x) == F(x, n) for n in range(top, top + 101))


# -- the three extractors -----------------------------------------------------

def test_x0_brackets_least_zero():
    for n0 in range(10):
        f = seq_with_zero_at(n0, n0 + 2, 15)
        x0 = x0_of(f).approx(30)
        assert Fraction(1, 1 << n0) - Fraction(1, 1 << 30) <= x0 <= Fraction(2, 1 << n0)


def test_mpc_examples():
    assert run("mpc", seq_with_zero_at(2)).found == 2
    assert run("mpc", EventualSeq((1,) * 5)).found is None


def test_dif_examples():
    assert run("dif", seq_with_zero_at(0)).found == 0
    assert run("dif", seq_with_zero_at(5, 9)).found == 5
    assert run("dif", EventualSeq((1,))).found is None


def test_rie_examples():
    assert run("rie", seq_with_zero_at(1)).found == 1
    assert run("rie", EventualSeq((1,))).found is None


@pytest.mark.parametrize("mode", sorted(ORACLES))
def test_extractors_against_brute_force(mode):
    rng = random.Random(mode)
    for _ in range(400):
        prefix = tuple(rng.randrange(3) for _ in range(17))
        f = EventualSeq(prefix)
        res = run(mode, f)
        assert res.found == f.least_zero
        if res.found is not None:
            assert res.found <= res.search_bound


def test_single_oracle_serves_all_shallow_zeros():
    Xi = oracle_moduli("f2", Fraction(1, 1 << 16))
    report = mu_check(lambda f: mu_from_mpc(Xi, f),
                      [EventualSeq(tuple(random.Random(i).choices((0, 1, 2), k=17)))
                       for i in range(1000)])
    assert report.ok and report.checked == 1000


def test_bounds_monotone_and_sufficient():
    Ns = [1, 2, 3, 4, 5, 100, 1 << 20, (1 << 20) + 1, 3 ** 500]
    for bound in (bound_mpc, bound_dif, bound_rie):
        values = [bound(N) for N in sorted(Ns)]
        assert values == sorted(values)
    for n0 in range(0, 41):
        L = Fraction(1, 1 << n0)
        assert bound_mpc(oracle_moduli("f2", L)(None, 1, None)) >= n0
        if n0 <= 20:
            assert bound_dif(oracle_moduli("f0", L, "dif")(None, 1)) >= n0
            assert bound_rie(oracle_moduli("f0", L, "rie")(None, 1)) >= n0


def test_probe_inequality_for_mpc():
    # a valid modulus forces x0 > 1/(2 sqrt(2N)); check the probe at the extreme
    for n0 in range(1, 8):
        x0 = Fraction(1, 1 << n0)
        N = oracle_moduli("f2", x0)(None, 1, None)
        f2 = make_f2(from_rational(x0), x0)
        y = Fraction(1, 2 * N)
        assert abs(R.sub(f2(0), f2(y)).approx(30)) < 1
        assert n0 <= bound_mpc(N)


# -- oracle validity ----------------------------------------------------------

@pytest.mark.parametrize("x0", [Fraction(1, 16), Fraction(1, 5), Fraction(1)])
def test_f2_oracle_on_grid(x0):
    Xi = oracle_moduli("f2", Fraction(1, 16))
    f2 = make_f2(from_rational(x0), Fraction(1, 16))
    for k in (1, 2, 8):
        N = Xi(f2.fn, k, from_rational(0))
        for i in range(0, 1 << 12, 7):
            y = Fraction(i, 1 << 12)
            if y < Fraction(1, N):
                assert abs(R.sub(f2(0), f2(y)).approx(k + 6)) < Fraction(1, k)


@pytest.mark.parametrize("x0", [Fraction(1, 8), Fraction(1, 3)])
def test_f0_dif_oracle(x0):
    XiD = oracle_moduli("f0", Fraction(1, 8), "dif")
    f0 = make_f0(from_rational(x0), Fraction(1, 8))
    for k in (1, 3):
        N = XiD(f0.fn, k)
        start = N.bit_length() + 1
        for j in range(start, start + 6):
            for e in (Fraction(1, 1 << j), Fraction(-1, 1 << j)):
                q = R.mul(R.sub(f0(e), f0(0)), from_rational(1 / e))
                assert abs(q.approx(k + 6)) < Fraction(1, k)  # f0'(0) = 0


@pytest.mark.parametrize("lower", [Fraction(1, 2), Fraction(1, 4)])
def test_f0_rie_oracle(lower):
    from realex.analysis import Partition, riemann_sum
    kappa = oracle_moduli("f0", lower, "rie")
    f0 = make_f0(from_rational(lower), lower)
    N = kappa(f0.fn, 1)
    left = riemann_sum(f0, Partition.equidistant(N, tag="left")).approx(8)
    right = riemann_sum(f0, Partition.equidistant(N, tag="right")).approx(8)
    assert abs(left - right) < 1


def test_constant_oracle_and_bad_family():
    assert oracle_moduli("const", 1)(None, 50) == 1
    with pytest.raises(ValueError):
        oracle_moduli("f7", 1)
    with pytest.raises(ValueError):
        oracle_moduli("f0", 1)
    with pytest.raises(ValueError):
        oracle_moduli("f2", 0)


# -- checking -----------------------------------------------------------------

def test_mu_check_examples():
    zero_free = [EventualSeq((1, 2, 3)), EventualSeq((5,), 7)]
    assert mu_check(lambda f: MuResult(None, 0), zero_free).ok
    broken = lambda f: MuResult(0, 0)  # noqa: E731
    report = mu_check(broken, [EventualSeq((1, 1, 1, 0)), EventualSeq((0, 1))])
    assert len(report.violations) == 1 and report.with_zero == 2


def test_eventual_seq():
    f = EventualSeq((1, 2), 0)
    assert [f(i) for i in range(4)] == [1, 2, 0, 0]
    assert f.least_zero == 2
