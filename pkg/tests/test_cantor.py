import itertools
import random

import pytest

from realex.cantor import (Associate, BinaryTree, all_trees, associate_of, binary_strings,
                           constant_associate, eval_associate, fan_associate, fan_modulus,
                           named_trees, padded, random_tree, scf_check, sep_with_fuel,
                           separation_bound, string_code, string_of_code, suite_functionals,
                           theta_from_fan, theta_prefixes, tof_check, tree_of, wkl_leftmost)
from realex.errors import DepthTooSmall, FuelExhausted

SUITE = suite_functionals()


def cylinder_values(Y, N, tails=3, seed=0):
    """Y on sigma * tail for every sigma of length N and a few tails."""
    rng = random.Random(seed)
    tail_bits = [(0,) * 16, (1,) * 16] + [tuple(rng.randrange(2) for _ in range(16))
                                          for _ in range(tails)]
    return {s: {Y(padded(s + t)) for t in tail_bits} for s in binary_strings(N)}


# -- fan modulus --------------------------------------------------------------

def test_fan_modulus_examples():
    assert fan_modulus(lambda a: a(3), 10) == 4
    assert fan_modulus(lambda a: 7, 10) == 0
    assert fan_modulus(lambda a: a(0) + a(1), 10) == 2


def test_fan_modulus_fuel():
    first_one = lambda a: next(i for i in itertools.count() if a(i))  # noqa: E731
    with pytest.raises(FuelExhausted):
        fan_modulus(first_one, 30)
    with pytest.raises(FuelExhausted):
        fan_modulus(lambda a: a(9), 5)


@pytest.mark.parametrize("name", sorted(SUITE))
def test_fan_modulus_sound_on_suite(name):
    Y = SUITE[name]
    N = fan_modulus(Y, 20)
    assert N <= 12
    assert all(len(v) == 1 for v in cylinder_values(Y, N).values())


def test_suite_is_large_enough():
    assert len(SUITE) >= 20


# -- special fan functional ---------------------------------------------------

def test_theta_examples():
    t = theta_from_fan(lambda a: 0, 10)
    assert set(t.w) == {(0,), (1,)} and t.k == 0
    t = theta_from_fan(lambda a: a(0), 10)
    assert len(t.w) == 4 and len(t.w[0]) == 2 and t.k == 1
    t = theta_from_fan(lambda a: 5, 10)
    assert t.k == 5 and len(t.w) == 32


def test_theta_at_modulus_plus_one_alone_is_not_enough():
    g = lambda a: 3  # noqa: E731
    short = theta_from_fan(g, 10, length=1)
    assert short.k == 3
    T = BinaryTree(lambda s: s[:3] not in {(0, 0, 0), (1, 0, 0)})
    assert not scf_check(short, g, T, 3)
    assert scf_check(theta_from_fan(g, 10), g, T, 3)


def test_scf_trivial_trees():
    g = SUITE["sum2"]
    t = theta_from_fan(g, 20)
    assert scf_check(t, g, BinaryTree.full(), t.k)
    assert scf_check(t, g, BinaryTree.empty(), t.k)


def test_scf_depth_check():
    g = SUITE["const7"]
    with pytest.raises(DepthTooSmall):
        scf_check(theta_from_fan(g, 10), g, BinaryTree.full(), 6)


def test_all_trees_are_the_prefix_closed_sets():
    trees = all_trees(3)
    assert len(trees) == 677 == len(set(trees))
    for t in trees:
        assert all(s[:-1] in t for s in t if s)
        assert all(len(s) <= 3 for s in t)


@pytest.mark.parametrize("name", ["bit0", "sum2", "number3", "branch", "either", "dtree3"])
def test_scf_exhaustive_depth3(name):
    g = SUITE[name]
    t = theta_from_fan(g, 20)
    pre = theta_prefixes(t, g)
    assert all(scf_check(t, g, tree_of(T), t.k, pre) for T in all_trees(3))


def test_scf_random_depth4():
    rng = random.Random(4)
    for name in ("bit3", "majority5", "indirect"):
        g = SUITE[name]
        t = theta_from_fan(g, 20)
        pre = theta_prefixes(t, g)
        for _ in range(300):
            assert scf_check(t, g, tree_of(random_tree(4, rng)), t.k, pre)


def test_membership_is_prefix_closed():
    T = BinaryTree(lambda s: s != (1,))
    assert (0, 1) in T
    assert not T.member((1, 0, 0))


# -- leftmost path ------------------------------------------------------------

def test_wkl_examples():
    trees = named_trees()
    assert wkl_leftmost(trees["no11"], 8).bits == (0,) * 8
    assert wkl_leftmost(trees["starts1"], 5).bits == (1, 0, 0, 0, 0)
    res = wkl_leftmost(BinaryTree(lambda s: len(s) < 3), 3)
    assert res.empty and res.bits == (0, 0, 0)


def test_wkl_stabilises_once_dead_branch_is_seen():
    # the 0-branch dies at length 6, the rest is all paths through 1 then no "11"
    T = BinaryTree(lambda s: (len(s) <= 5 if s[:1] == (0,) else (1, 1) not in zip(s[1:], s[2:])))
    short = wkl_leftmost(T, 5)
    assert short.bits == (0,) * 5
    paths = [wkl_leftmost(T, n).bits for n in range(6, 16)]
    for p, q in zip(paths, paths[1:]):
        assert q[:len(p)] == p
    assert paths[0] == (1, 0, 0, 0, 0, 0)


def test_wkl_alternating_tree():
    assert wkl_leftmost(named_trees()["alternating"], 6).bits == (0, 1, 0, 1, 0, 1)


# -- separation ---------------------------------------------------------------

def zero_at(j):
    return lambda i, n: 0 if i == j else 1


never = lambda i, n: 1  # noqa: E731


def test_separation_examples():
    # f1 zero at 5, f2 never zero: the condition never fails, K = fuel
    assert separation_bound(zero_at(5), never, 0, 100) == 100
    assert sep_with_fuel(zero_at(5), never, 0, 100) == 1
    assert separation_bound(never, never, 0, 100) == 100
    assert sep_with_fuel(never, never, 0, 100) == 0
    assert sep_with_fuel(never, zero_at(3), 0, 100) == 0
    assert sep_with_fuel(zero_at(3), never, 0, 100) == 1


def test_separation_both_zero():
    # both hit zero: the bound stops below the later one
    assert separation_bound(zero_at(2), zero_at(6), 0, 100) == 5
    assert sep_with_fuel(zero_at(2), zero_at(6), 0, 100) == 1
    assert sep_with_fuel(zero_at(6), zero_at(2), 0, 100) == 0
    assert separation_bound(zero_at(0), zero_at(0), 0, 100) == 0


def test_separation_against_displayed_definition():
    rng = random.Random(1)
    for _ in range(200):
        z1, z2 = rng.randrange(12), rng.randrange(12)
        f1 = lambda i, n, z=z1: int(i != z)  # noqa: E731
        f2 = lambda i, n, z=z2: int(i != z)  # noqa: E731
        fuel = 10
        ks = [k for k in range(fuel + 1)
              if all(f1(a, 0) != 0 or f2(b, 0) != 0 for a in range(k + 1) for b in range(k + 1))]
        K = max(ks) if ks else 0
        assert separation_bound(f1, f2, 0, fuel) == K
        assert sep_with_fuel(f1, f2, 0, fuel) == int(any(f1(i, 0) == 0 for i in range(K + 1)))


# -- associates ---------------------------------------------------------------

def test_associate_examples():
    const = associate_of(lambda a: 7, 10)
    assert const(()) == 8
    assert eval_associate(const, lambda i: i, 5) == 7
    assert eval_associate(constant_associate(7), lambda i: 1, 0) == 7
    proj2 = associate_of(lambda a: a(2), 10)
    assert eval_associate(proj2, lambda i: i, 10) == 2
    proj1 = associate_of(lambda a: a(1), 10)
    for n in range(5):
        for s in binary_strings(n):
            assert (proj1(s) > 0) == (n >= 2)
    with pytest.raises(FuelExhausted):
        eval_associate(associate_of(lambda a: a(0), 10), lambda i: 0, 0)


def _tree_functional(rng, depth):
    def build(d):
        if d == 0 or rng.random() < 0.25:
            return rng.randrange(5)
        return (rng.randrange(6), build(d - 1), build(d - 1))

    tree = build(depth)

    def run(a):
        node = tree
        while isinstance(node, tuple):
            i, lo, hi = node
            node = hi if a(i) else lo
        return node

    return run


def test_associate_round_trip_random_trees():
    rng = random.Random(6)
    for _ in range(100):
        Y = _tree_functional(rng, 6)
        alpha = associate_of(Y, 10)
        for s in binary_strings(6):
            assert eval_associate(alpha, padded(s), 6) == Y(padded(s))


def test_associate_is_consistent_once_positive():
    alpha = associate_of(SUITE["branch"], 20)
    for n in range(9):
        for s in binary_strings(n):
            if alpha(s) > 0:
                assert alpha(s + (0,)) == alpha(s + (1,)) == alpha(s)


def test_string_codes():
    seen = [string_of_code(c) for c in range(31)]
    assert seen[:7] == [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]
    assert all(string_code(s) == c for c, s in enumerate(seen))


def test_tof_examples():
    gamma = fan_associate()
    f0 = associate_of(lambda a: a(0), 10)
    assert tof_check(gamma, f0, 4)
    from realex.cantor import associate_table
    assert eval_associate(gamma, associate_table(f0), 100) == 1
    assert tof_check(gamma, constant_associate(4), 3)
    assert eval_associate(gamma, associate_table(constant_associate(4)), 100) == 0
    assert not tof_check(constant_associate(0), f0, 4)


def test_tof_on_suite_and_depth_error():
    gamma = fan_associate()
    for name in ("sum2", "bit3", "branch", "number3"):
        Y = SUITE[name]
        assert tof_check(gamma, associate_of(Y, 20), 9)
    with pytest.raises(DepthTooSmall):
        # gamma answers from a table deeper than the check covers
        tof_check(Associate(lambda rho: 9), associate_of(SUITE["bit3"], 20), 4)
    # a table too short for gamma to decide counts as failure
    assert not tof_check(gamma, associate_of(SUITE["bit11"], 20), 3)
