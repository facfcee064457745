"""Cantor-space functionals: fan modulus, special fan functional, trees,
leftmost paths, separation and associates.

A *functional* is a pure Python callable taking a sequence ``alpha`` (itself
a callable ``n -> int``) and returning a natural number.  Finite binary
strings are tuples of 0/1.  Nothing can check purity or continuity of a
black box; :func:`fan_modulus` certifies continuity by running out of fuel
or not.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import DepthTooSmall, FuelExhausted

Bits = tuple
Seq = Callable[[int], int]
Functional = Callable[[Seq], int]


def padded(prefix: Sequence[int], tail: int = 0) -> Seq:
    """The sequence prefix * tail tail tail ..."""
    prefix = tuple(prefix)
    n = len(prefix)
    return lambda i: prefix[i] if i < n else tail


def prefix_of(alpha: Seq, n: int) -> Bits:
    """The initial segment alpha(0) ... alpha(n-1)."""
    return tuple(alpha(i) for i in range(n))


def binary_strings(n: int) -> Iterator[Bits]:
    """All 2**n binary strings of length n in lexicographic order."""
    return itertools.product((0, 1), repeat=n)


class _Tracer:
    """A sequence that records the largest index queried."""

    def __init__(self, prefix: Sequence[int], limit: Optional[int] = None):
        self.prefix = tuple(prefix)
        self.limit = limit
        self.top = -1

    def __call__(self, i: int) -> int:
        if i < 0:
            raise IndexError(i)
        if self.limit is not None and i >= self.limit:
            raise FuelExhausted(f"query at index {i} exceeds fuel {self.limit}")
        if i > self.top:
            self.top = i
        return self.prefix[i] if i < len(self.prefix) else 0


def trace(Y: Functional, prefix: Sequence[int], limit: Optional[int] = None) -> tuple[int, int]:
    """Run Y on prefix * 000... and return (value, largest index read or -1)."""
    t = _Tracer(prefix, limit)
    value = Y(t)
    return value, t.top


def _fuel(fuel) -> int:
    return getattr(fuel, "n", fuel)


# -- fan functional -----------------------------------------------------------

def fan_modulus(Y: Functional, fuel) -> int:
    """A modulus of uniform continuity N for Y on Cantor space.

    Bar search: a prefix sigma is secured once Y on sigma * 000... reads only
    indices below |sigma|; a deterministic Y then takes that value on every
    extension of sigma.  N is one past the largest index read over the bar
    (0 if Y reads nothing).  Raises FuelExhausted past depth ``fuel``.
    """
    fuel = _fuel(fuel)

    def search(sigma: Bits) -> int:
        _, top = trace(Y, sigma, fuel)
        if top < len(sigma):
            return top + 1
        if len(sigma) >= fuel:
            raise FuelExhausted(f"no bar within depth {fuel}")
        return max(search(sigma + (0,)), search(sigma + (1,)))

    return search(())


@dataclass(frozen=True)
class ThetaResult:
    """A finite list of eventually-zero sequences (stored as their prefixes)
    and a depth bound."""
    w: tuple
    k: int

    def sequences(self) -> list[Seq]:
        return [padded(p) for p in self.w]


def theta_from_fan(g: Functional, fuel, length: Optional[int] = None) -> ThetaResult:
    """The special fan functional computed from the fan modulus.

    w lists sigma * 000... for every binary sigma of length n, and k is the
    largest value of g on w.  The default n = max(Omega(g) + 1, k) makes w
    agree with any beta up to g(beta), which is what the covering property
    needs; ``length`` overrides n.
    """
    omega = fan_modulus(g, fuel)
    base = omega + 1
    k = max(g(padded(s)) for s in binary_strings(base))
    n = max(base, k) if length is None else length
    w = tuple(binary_strings(n))
    if n != base:
        k = max(g(padded(s)) for s in w)
    return ThetaResult(w, k)


# -- trees --------------------------------------------------------------------

class BinaryTree:
    """A decidable set of binary strings, closed under prefixes by construction:
    sigma is a member iff every prefix of sigma passes the raw predicate."""

    def __init__(self, raw: Callable[[Bits], bool], name: str = "T"):
        self._raw = lru_cache(maxsize=None)(lambda s: bool(raw(s)))
        self.name = name

    def member(self, sigma: Sequence[int]) -> bool:
        sigma = tuple(sigma)
        return all(self._raw(sigma[:i]) for i in range(len(sigma) + 1))

    __contains__ = member

    def members(self, n: int) -> Iterator[Bits]:
        """Members of length n, lexicographically, found by pruned search."""
        def walk(sigma: Bits) -> Iterator[Bits]:
            if not self._raw(sigma):
                return
            if len(sigma) == n:
                yield sigma
                return
            yield from walk(sigma + (0,))
            yield from walk(sigma + (1,))

        return walk(())

    def has_member(self, n: int) -> bool:
        return next(self.members(n), None) is not None

    @classmethod
    def full(cls) -> BinaryTree:
        return cls(lambda s: True, "full")

    @classmethod
    def empty(cls) -> BinaryTree:
        return cls(lambda s: False, "empty")

    @classmethod
    def from_strings(cls, strings: Iterable[Sequence[int]], name: str = "T") -> BinaryTree:
        """The prefix closure of the given strings."""
        closed = set()
        for s in strings:
            s = tuple(s)
            closed.update(s[:i] for i in range(len(s) + 1))
        frozen = frozenset(closed)
        return cls(lambda s: s in frozen, name)


def all_trees(depth: int) -> list[frozenset]:
    """Every prefix-closed set of binary strings of length <= depth, the
    empty set included."""
    def rooted(d: int, at: Bits) -> list[frozenset]:
        # nonempty trees rooted at `at` with at most d more levels
        if d == 0:
            return [frozenset([at])]
        sub0 = [frozenset()] + rooted(d - 1, at + (0,))
        sub1 = [frozenset()] + rooted(d - 1, at + (1,))
        return [frozenset([at]) | a | b for a in sub0 for b in sub1]

    return [frozenset()] + rooted(depth, ())


def random_tree(depth: int, rng: random.Random, keep: float = 0.75) -> frozenset:
    """A random prefix-closed set: each child of a member survives with
    probability ``keep``; the root itself is dropped with small probability."""
    if rng.random() < 0.05:
        return frozenset()
    out = {()}
    frontier = [()]
    for _ in range(depth):
        nxt = []
        for s in frontier:
            for b in (0, 1):
                if rng.random() < keep:
                    out.add(s + (b,))
                    nxt.append(s + (b,))
        frontier = nxt
    return frozenset(out)


def tree_of(strings: frozenset, name: str = "T") -> BinaryTree:
    return BinaryTree(lambda s: s in strings, name)


# -- special fan check --------------------------------------------------------

def theta_prefixes(theta: ThetaResult, g: Functional) -> list:
    """The distinct strings alpha-bar g(alpha) over alpha in w, shortest first
    (short strings are the likeliest tree members, which ends checks early)."""
    out = set()
    for p in theta.w:
        alpha = padded(p)
        out.add(prefix_of(alpha, g(alpha)))
    return sorted(out, key=lambda s: (len(s), s))


def scf_check(theta: ThetaResult, g: Functional, T: BinaryTree, depth: int,
              prefixes: Optional[Sequence] = None) -> bool:
    """Whether the covering implication holds for (g, T).

    If every alpha in w leaves T at alpha-bar g(alpha), every beta must leave
    T at some length <= k; by prefix closure that means T has no member of
    length k.  ``prefixes`` may carry a precomputed :func:`theta_prefixes`.
    """
    if depth < theta.k:
        raise DepthTooSmall(f"depth {depth} < k = {theta.k}")
    if prefixes is None:
        prefixes = theta_prefixes(theta, g)
    if any(T.member(p) for p in prefixes):
        return True
    return not T.has_member(theta.k)


# -- weak Koenig's lemma ------------------------------------------------------

@dataclass(frozen=True)
class WklPath:
    bits: Bits
    empty: bool = False


def wkl_leftmost(T: BinaryTree, fuel) -> WklPath:
    """The leftmost member of length ``fuel``, built bit by bit: take 0 when
    some member of length fuel extends it, 1 otherwise.

    A tree with no member of that length gives the all-0 string flagged empty.
    """
    n = _fuel(fuel)

    @lru_cache(maxsize=None)
    def extendable(sigma: Bits) -> bool:
        if not T.member(sigma):
            return False
        if len(sigma) == n:
            return True
        return extendable(sigma + (0,)) or extendable(sigma + (1,))

    if not extendable(()):
        return WklPath((0,) * n, empty=True)
    sigma: Bits = ()
    while len(sigma) < n:
        sigma += (0,) if extendable(sigma + (0,)) else (1,)
    return WklPath(sigma)


# -- separation ---------------------------------------------------------------

def _least_zero(f: Callable[[int, int], int], n: int, fuel: int) -> Optional[int]:
    return next((i for i in range(fuel + 1) if f(i, n) == 0), None)


def separation_bound(f1, f2, n: int, fuel) -> int:
    """Largest K <= fuel with f1(n1, n) != 0 or f2(n2, n) != 0 for all
    n1, n2 <= K; 0 when no K qualifies."""
    fuel = _fuel(fuel)
    z1, z2 = _least_zero(f1, n, fuel), _least_zero(f2, n, fuel)
    if z1 is None or z2 is None:
        return fuel
    # the condition fails exactly from max(z1, z2) on
    return max(max(z1, z2) - 1, 0)


def sep_with_fuel(f1, f2, n: int, fuel) -> int:
    """1 if f1(., n) has a zero at or below the separation bound, else 0."""
    K = separation_bound(f1, f2, n, fuel)
    return int(any(f1(i, n) == 0 for i in range(K + 1)))


# -- associates ---------------------------------------------------------------

class Associate:
    """A code alpha for a continuous functional: alpha(sigma) > 0 means the
    functional equals alpha(sigma) - 1 on every extension of sigma."""

    def __init__(self, alpha: Callable[[Bits], int], name: str = "alpha"):
        self._alpha = lru_cache(maxsize=None)(alpha)
        self.name = name

    def __call__(self, sigma: Sequence[int]) -> int:
        return self._alpha(tuple(sigma))


def associate_of(Y: Functional, fuel) -> Associate:
    """The associate of Y read off its query traces.

    alpha(sigma) = Y(sigma * 000...) + 1 when that run reads only indices
    below |sigma|, else 0.  Y is first certified continuous within ``fuel``.
    """
    fuel = _fuel(fuel)
    fan_modulus(Y, fuel)

    def alpha(sigma: Bits) -> int:
        try:
            value, top = trace(Y, sigma, max(fuel, len(sigma)))
        except FuelExhausted:
            return 0
        return value + 1 if top < len(sigma) else 0

    return Associate(alpha, getattr(Y, "__name__", "alpha"))


def constant_associate(c: int) -> Associate:
    return Associate(lambda sigma: c + 1, f"const{c}")


def eval_associate(alpha: Associate, beta: Seq, fuel) -> int:
    """alpha(beta-bar n) - 1 for the least n <= fuel where it is positive."""
    fuel = _fuel(fuel)
    for n in range(fuel + 1):
        v = alpha(prefix_of(beta, n))
        if v > 0:
            return v - 1
    raise FuelExhausted(f"associate undefined on a prefix of length <= {fuel}")


def string_code(sigma: Sequence[int]) -> int:
    """Position of a binary string in shortlex order: 2**|s| - 1 + int(s)."""
    value = 0
    for b in sigma:
        value = 2 * value + b
    return (1 << len(sigma)) - 1 + value


def string_of_code(c: int) -> Bits:
    n = (c + 1).bit_length() - 1
    v = c + 1 - (1 << n)
    return tuple((v >> (n - 1 - i)) & 1 for i in range(n))


def associate_table(alpha: Associate) -> Seq:
    """alpha restricted to binary strings, as a sequence in shortlex order."""
    return lambda c: alpha(string_of_code(c))


def fan_associate() -> Associate:
    """An associate for the fan functional itself, read through
    :func:`associate_table`.

    Given a finite part rho of an associate's table it walks the binary tree
    from the root, stopping at strings with a positive value and descending
    at zeros; if every branch stops within rho, the answer is the longest
    stopping depth.
    """
    def gamma(rho: Bits) -> int:
        known = len(rho)

        def depth(sigma: Bits) -> Optional[int]:
            c = string_code(sigma)
            if c >= known:
                return None
            if rho[c] > 0:
                return len(sigma)
            left = depth(sigma + (0,))
            if left is None:
                return None
            right = depth(sigma + (1,))
            return None if right is None else max(left, right)

        d = depth(())
        return 0 if d is None else d + 1

    return Associate(gamma, "fan")


def tof_check(gamma: Associate, alpha: Associate, depth: int) -> bool:
    """Check gamma's answer on alpha as a modulus for alpha's functional.

    gamma reads alpha's table on strings of length <= depth; if it gives no
    answer there the check fails.  A returned modulus M is verified on every
    binary sequence through depth: extensions of one length-M prefix must
    all get the same value.  Raises DepthTooSmall when M > depth.
    """
    table = associate_table(alpha)
    limit = (1 << (depth + 1)) - 1
    try:
        M = eval_associate(gamma, table, limit)
    except FuelExhausted:
        return False
    if M > depth:
        raise DepthTooSmall(f"modulus {M} exceeds depth {depth}")
    seen: dict = {}
    for sigma in binary_strings(depth):
        try:
            v = eval_associate(alpha, padded(sigma), depth)
        except FuelExhausted:
            return False
        if seen.setdefault(sigma[:M], v) != v:
            return False
    return True


# -- a suite of functionals ---------------------------------------------------

def _named(name: str, fn: Functional) -> Functional:
    fn.__name__ = name
    return fn


def _first_one(limit: int) -> Functional:
    return lambda a: next((i for i in range(limit) if a(i)), limit)


def _decision_tree(rng: random.Random, depth: int) -> Functional:
    """A random decision tree of depth <= depth over indices < 12."""
    def build(d: int):
        if d == 0 or rng.random() < 0.2:
            return rng.randrange(8)
        return (rng.randrange(12), build(d - 1), build(d - 1))

    tree = build(depth)

    def run(a: Seq) -> int:
        node = tree
        while isinstance(node, tuple):
            i, lo, hi = node
            node = hi if a(i) else lo
        return node

    return run


def suite_functionals(random_count: int = 6, seed: int = 7) -> dict[str, Functional]:
    """Named Cantor functionals with fan modulus and values at most 12."""
    out: dict[str, Functional] = {
        "const0": lambda a: 0,
        "const7": lambda a: 7,
        "bit0": lambda a: a(0),
        "bit3": lambda a: a(3),
        "bit11": lambda a: a(11),
        "sum2": lambda a: a(0) + a(1),
        "sum8": lambda a: sum(a(i) for i in range(8)),
        "parity5": lambda a: sum(a(i) for i in range(5)) % 2,
        "first_one10": _first_one(10),
        "first_one12": _first_one(12),
        "branch": lambda a: a(7) if a(0) else a(3),
        "indirect": lambda a: a(a(0) + 2 * a(1) + 4 * a(2)),
        "majority5": lambda a: int(sum(a(i) for i in range(5)) >= 3),
        "number3": lambda a: a(0) + 2 * a(1) + 4 * a(2),
        "run_length": lambda a: max(len(list(g)) for k, g in itertools.groupby(
            a(i) for i in range(9)) if k == 1) if any(a(i) for i in range(9)) else 0,
        "count_pairs": lambda a: sum(a(i) * a(i + 1) for i in range(10)),
        "gap": lambda a: abs(a(2) - a(9)) + a(4),
        "either": lambda a: 5 if a(1) or a(6) else 2,
    }
    rng = random.Random(seed)
    for j in range(random_count):
        out[f"dtree{j}"] = _decision_tree(rng, 6)
    return {name: _named(name, fn) for name, fn in out.items()}


def named_trees() -> dict[str, BinaryTree]:
    """Trees for the command line."""
    return {
        "full": BinaryTree.full(),
        "empty": BinaryTree.empty(),
        "no11": BinaryTree(lambda s: (1, 1) not in zip(s, s[1:]), "no11"),
        "starts1": BinaryTree(lambda s: len(s) == 0 or s[0] == 1, "starts1"),
        "depth3": BinaryTree(lambda s: len(s) <= 3, "depth3"),
        "alternating": BinaryTree(lambda s: all(b == i % 2 for i, b in enumerate(s)),
                                  "alternating"),
    }
