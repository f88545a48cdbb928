"""
Cylinders: the intervals that share an expansion prefix
=======================================================

Fixing the first n terms of a type III expansion pins the number to an
open interval with rational endpoints.  These cylinders nest as the
prefix grows, tile their parent when you enumerate the next term, and
their measures telescope -- all of it exact.
"""

from fractions import Fraction
from itertools import product

from clogkit import (
    CylinderSpec,
    cylinder_contains,
    cylinder_endpoints,
    cylinder_endpoints_gcf,
    cylinder_measure,
    expand_type3,
    naturals,
)

# Rank 1, base 2: every x in (1, 2) opens with the trivial term 1*2**0,
# and its next term 1*2**k confines it to (1 + 1/2**(k+1), 1 + 1/2**k),
# an interval of measure 1/(2 * 2**k).
print("rank-1 cells, base 2 (next term = 2**k):")
for k in range(5):
    spec = CylinderSpec(2, (k,), (1,))
    iv = cylinder_endpoints(spec)
    print(f"  k={k}: ({iv.lo}, {iv.hi})   measure {cylinder_measure(spec)}")

# Truncating the exponent at K leaves exactly b**-(K+1) uncovered.
for K in (3, 10):
    total = sum(cylinder_measure(CylinderSpec(2, (k,), (1,))) for k in range(K + 1))
    print(f"  sum through k={K}: {total} = 1 - 2**-{K + 1}? "
          f"{total == 1 - Fraction(1, 2 ** (K + 1))}")

# Deeper prefixes nest strictly.  The ambient space is (1, 2) -- every x
# there opens with the trivial term 1*b**0, so a cylinder path starts at
# the second term.  Follow 26/15 and watch the intervals tighten.
print("\nnesting along the expansion of 26/15:")
x = Fraction(26, 15)
e = expand_type3(x, 2)
ks = tuple(t.a for t in e.terms[1:])
ls = tuple(t.c for t in e.terms[1:])
for depth in range(1, len(ks) + 1):
    spec = CylinderSpec(2, ks[:depth], ls[:depth])
    iv = cylinder_endpoints(spec)
    inside = cylinder_contains(spec, x)
    print(f"  depth {depth}: ({iv.lo}, {iv.hi})  width {iv.measure}  "
          f"contains {x}? {inside}")

# Children tile their parent contiguously, in alternating orientation;
# capping the child exponent leaves a sliver at one end.
print("\nchildren of the k=0 cell, base 3:")
parent = CylinderSpec(3, (0,), (1,))
piv = cylinder_endpoints(parent)
covered = Fraction(0)
for k, l in product(range(4), (1, 2)):
    covered += cylinder_measure(CylinderSpec(3, (0, k), (1, l)))
print(f"  parent ({piv.lo}, {piv.hi}) has measure {piv.measure}")
print(f"  children with k <= 3 cover {covered}, "
      f"leaving {piv.measure - covered}")

# The same machinery drives generalized continued fractions: a prefix of
# term indices into an increasing sequence is again an interval.  Over
# the naturals, index j as the first term gives the classical cell
# (1 + 1/(j+2), 1 + 1/(j+1)).
print("\nrank-1 cells over the naturals:")
seq = naturals()
for j in (0, 1, 2):
    iv = cylinder_endpoints_gcf(seq, (j,))
    print(f"  first term c_{j} = {j + 1}: ({iv.lo}, {iv.hi})  measure {iv.measure}")
