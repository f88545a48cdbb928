"""
Logarithmic Khinchine constants, from closed forms to live statistics
=====================================================================

The geometric mean of the terms c_n * b**a_n converges, for almost every
x, to a constant KL_b depending only on the base and the expansion type.
Types I and III admit closed forms; type II is estimated by iterating its
distribution; and as b grows everything collapses onto the classical
Khinchine picture.  The script ends by measuring the statistics on two
concrete numbers -- one typical, one famously not.
"""

import math
import random
from fractions import Fraction

from clogkit import (
    PUBLISHED_KL1,
    PUBLISHED_KL3,
    classical_khinchine,
    dn_limit_type3,
    expand_type3,
    kl_limit_gap,
    kl_type1,
    kl_type2_estimate,
    kl_type3,
    term_stats,
)

print("closed-form constants (published values in parentheses):")
print("  b    type I                      type III")
for b in range(2, 11):
    v1 = float(kl_type1(b).value)
    v3 = float(kl_type3(b).value)
    print(f"  {b:2d}   {v1:.9f} ({PUBLISHED_KL1[b]:.9f})   "
          f"{v3:.9f} ({PUBLISHED_KL3[b]:.9f})")

# Type II sits between: no closed form, but ten distribution iterations
# already give several digits.
print("\ntype II estimates:")
for b in (2, 3, 10):
    v = kl_type2_estimate(b)
    print(f"  b = {b:2d}: {float(v.value):.6f}  (tail bound {v.tail_bound:.1e})")

# The classical constant is the b -> infinity limit of the exponents'
# geometric mean; truncating its defining product at l_cap recovers the
# familiar 2.685452...
print("\nclassical Khinchine constant by truncation:")
for cap in (10**2, 10**4, 10**7):
    print(f"  l <= {cap:>8d}: {float(classical_khinchine(cap).value):.9f}")
print(f"  gap between KL_b exponents and the classical value at b = 10**4: "
      f"{kl_limit_gap(10**4):.2e}")

# --- statistics of actual expansions -------------------------------------
# A "random" number behaves: its geometric mean tracks KL_2 and its term
# frequencies track the limiting masses.
rng = random.Random(7)
digits = 5000
mantissa = rng.randrange(10 ** (digits - 1), 10**digits)
x = 1 + Fraction(mantissa, 10**digits)  # a random point of (1, 2)
e = expand_type3(x, 2, max_terms=2001)
s = term_stats(e)
kl2 = float(kl_type3(2).value)
print(f"\nrandom {digits}-digit x: {s.n_terms} terms, "
      f"geometric mean {float(s.geometric_mean):.6f} vs KL_2 = {kl2:.6f}")
print(f"  share of terms equal to 1*2^0: {s.proportion(0, 1):.4f} "
      f"vs limit {dn_limit_type3(2, 0, 1):.4f}")

# sqrt(2) does not behave: its binary expansion is eventually periodic
# (the tail remainder 2 + 2*sqrt(2) is a fixed point of y -> 4/(y - 4)),
# so its geometric mean locks onto 4 instead of KL_2.  Almost-everywhere
# theorems make no promise about any particular algebraic number.
root = math.isqrt(2 * 10 ** (2 * digits))
x2 = Fraction(root, 10**digits)
e2 = expand_type3(x2, 2, max_terms=2001)
s2 = term_stats(e2)
print(f"\nsqrt(2) to {digits} digits: geometric mean "
      f"{float(s2.geometric_mean):.6f} -- periodic, not typical")
counts = sorted(s2.histogram.items(), key=lambda kv: -kv[1])[:3]
print("  dominant terms: "
      + ", ".join(f"{ell}*2^{k} x{n}" for (k, ell), n in counts))
