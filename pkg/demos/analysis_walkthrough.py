"""Walkthrough: exact reals, roots, maxima and integrals with certified error.

Run with ``python3 demos/analysis_walkthrough.py``.
"""
from fractions import Fraction

from realex import (compile_expr, dyadic_net, evt_ef, from_rational, integrate_ef, ivt_ef,
                    riemann_jump_demo, sqrt_nonneg)


def show(label, x, n=30):
    print(f"{label:<40} {float(x.approx(n)):.12f}")


print("A real is a stream of rationals with |x(n) - x(n+i)| <= 2^-n.")
root2 = sqrt_nonneg(from_rational(2))
show("sqrt(2)", root2)
print("  approximations at n = 0, 4, 8:", [str(root2.approx(n)) for n in (0, 4, 8)])

print("\nFunctions come from the expression language, with a derived modulus.")
f = compile_expr("x*x*x - x/2 - 1/10")
print("  modulus g(k) for k = 1, 10, 100:", [f.modulus(k) for k in (1, 10, 100)])

print("\nIntermediate values: a point where |f| < 1/k.")
for k in (10, 1000):
    x = ivt_ef(f, k)
    show(f"  x* for k = {k}", x)
    show(f"  f(x*)", f(x))

print("\nExtreme values: a net point within 1/k of the maximum.")
g = compile_expr("x*(1 - x)")
show("  argmax of x(1 - x), k = 64", evt_ef(g, dyadic_net(g.domain), 64))

print("\nIntegration: equidistant Riemann sums sized by the modulus.")
show("  integral of exp(x) on [0,1]", integrate_ef(compile_expr("exp(x)")), 12)
show("  integral of x*x on [0,1]", integrate_ef(compile_expr("x*x")))

print("\nWhy no modulus of integration exists in general:")
for m in (2, 4, 6):
    left, moved = riemann_jump_demo(m)
    diff = left.approx(12) - moved.approx(12)
    print(f"  m = {m}: moving one tag changes the Riemann sum by {float(diff):.1f} > 2^{m}")
