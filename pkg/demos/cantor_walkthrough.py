"""Walkthrough: functionals on Cantor space, trees and associates.

Run with ``python3 demos/cantor_walkthrough.py``.
"""
from realex.cantor import (associate_of, eval_associate, fan_modulus, named_trees, padded,
                           scf_check, suite_functionals, theta_from_fan, wkl_leftmost)
from realex.errors import FuelExhausted

suite = suite_functionals()
Y = suite["branch"]          # a(7) if a(0) else a(3)

print("The fan modulus bounds how much of the input any value depends on.")
N = fan_modulus(Y, 64)
print(f"  branch reads at most the first {N} bits")

print("\nA functional that searches too far exhausts its fuel:")
try:
    fan_modulus(suite["first_one12"], 5)
except FuelExhausted as err:
    print("  FuelExhausted:", err)

print("\nThe special fan functional lists finitely many sequences that cover")
print("every tree the functional could escape.")
theta = theta_from_fan(Y, 64)
print(f"  {len(theta.w)} sequences, depth bound k = {theta.k}")
for name, T in named_trees().items():
    print(f"  tree {name:<12} covering check: {scf_check(theta, Y, T, max(theta.k, 3))}")

print("\nLeftmost paths through trees, as far as fuel allows:")
for name in ("no11", "starts1", "empty"):
    path = wkl_leftmost(named_trees()[name], 6)
    print(f"  {name:<8} -> {'(no path)' if path.empty else path.bits}")

print("\nAn associate encodes a functional as a function on finite strings.")
alpha = associate_of(Y, 64)
for bits in [(0, 0, 0, 1), (1, 0, 0, 0, 0, 0, 0, 1), (1,)]:
    print(f"  alpha{bits} = {alpha(bits)}")
beta = padded((1, 0, 0, 0, 0, 0, 0, 1))
print(f"  evaluating through the associate: {eval_associate(alpha, beta, 16)}, directly: {Y(beta)}")
