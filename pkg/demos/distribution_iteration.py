"""Watching the term distribution converge, then fitting its shape.

m_n(x) is the probability that the n-th normalized remainder falls below
x.  Iterating the transfer recursion from the uniform start m_0(x) = x-1
drives it toward a closed-form limit; this script prints the sup-norm
shrinking, tabulates the limiting term masses, and runs the two-parameter
model fit that recovers alpha = 1/b, beta = (b-1)/b.
"""

import numpy as np

from clogkit import (
    Variant,
    dist_table,
    dn_limit_type3,
    fit_type1,
    iterate_m,
    m_limit_type1,
    m_limit_type3,
    model_type1,
)

# --- convergence of the iteration, type III, base 2 ---------------------
print("sup |m_n - m_limit| on a 101-point grid, type III, base 2:")
for iterations in (0, 1, 2, 4, 6, 10):
    g = iterate_m(Variant.TYPE3, 2, grid_points=101, iterations=iterations)
    sup = float(np.max(np.abs(g.ys - m_limit_type3(2, g.xs))))
    print(f"  n = {iterations:2d}: {sup:.3e}")

# A coarse picture of the limit itself: where the mass sits on (1, 2).
print("\nm_limit_type3(2, x):")
for x in np.linspace(1.0, 2.0, 11):
    bar = "#" * round(40 * m_limit_type3(2, float(x)))
    print(f"  x = {x:.1f} | {bar}")

# --- limiting masses of individual terms --------------------------------
# D(k, l) is the limiting probability that a term equals l * b**k.  The
# masses decay geometrically in k and sum to 1 across the whole family.
print("\nlimiting term masses, type III, base 3:")
table = dist_table(Variant.TYPE3, 3, k_max=3)
for (k, ell), mass in sorted(table.masses.items()):
    print(f"  term {ell}*3^{k}: {mass:.6f}")
print(f"  (closed form check: D(0,1) = {dn_limit_type3(3, 0, 1):.6f})")

# --- the two-parameter model ---------------------------------------------
# The limit laws fit log_b((alpha*x + beta) / (x + alpha + beta - 1)).
# Fitting the 10-iteration type I grid recovers alpha ~ 1/b and
# beta ~ (b-1)/b for every base.
print("\nfitted model parameters on the 10-iteration type I grid:")
print("  b    alpha       beta        (targets 1/b, (b-1)/b)")
for b in (2, 3, 5, 10):
    g = iterate_m(Variant.TYPE1, b, grid_points=2001, iterations=10)
    r = fit_type1(b, g)
    print(f"  {b:2d}   {r.alpha:.6f}   {r.beta:.6f}    "
          f"({1 / b:.6f}, {(b - 1) / b:.6f})  rss={r.rss:.2e}")

# The fitted curve is not just close at the grid: plugging the exact
# parameters into the model reproduces the closed-form limit identically.
xs = np.linspace(1.0, 2.0, 9)
worst = float(np.max(np.abs(model_type1(4, 0.25, 0.75, xs) - m_limit_type1(4, xs))))
print(f"\nmodel at (alpha, beta) = (1/4, 3/4) vs closed form, base 4: "
      f"max gap {worst:.1e}")
