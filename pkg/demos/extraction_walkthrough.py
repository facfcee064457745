"""Walkthrough: recovering an unbounded search from a modulus functional.

Each extractor builds a steep function from the sequence, asks a modulus
functional about it, and turns the answer into a search bound.  Here the
functionals are oracles valid whenever x0 >= 2^-16.

Run with ``python3 demos/extraction_walkthrough.py``.
"""
from fractions import Fraction

from realex.extract import (EventualSeq, mu_from_dif, mu_from_mpc, mu_from_rie, oracle_moduli,
                            x0_of)

lower = Fraction(1, 2 ** 16)
modes = {
    "pointwise continuity": (mu_from_mpc, oracle_moduli("f2", lower)),
    "differentiability": (mu_from_dif, oracle_moduli("f0", lower, "dif")),
    "Riemann integration": (mu_from_rie, oracle_moduli("f0", lower, "rie")),
}

for prefix in [(1, 1, 0), (1,) * 9 + (0,), (1,) * 16 + (0,), (1,) * 20]:
    f = EventualSeq(prefix, tail=1)
    print(f"sequence {''.join(map(str, prefix))}...  least zero = {f.least_zero}")
    print(f"  x0 ~ {float(x0_of(f).approx(40)):.3e}")
    for label, (mu, oracle) in modes.items():
        r = mu(oracle, f)
        # the f0 moduli are near e**(2**16), so report their size in bits
        print(f"  {label:<22} N has {r.query.bit_length():>6} bits, search bound"
              f" {r.search_bound:<6} found {r.found}")
