"""Convergents, determinants, and the remainder theorem, all exactly.

The three-term recurrence behind p_n/q_n is the same one classical
continued fractions use, just with the recursive numerator beta_n riding
along.  Everything below is Fraction arithmetic -- no floats, no
tolerances -- which is the point: these identities hold on the nose.
"""

from fractions import Fraction

from clogkit import (
    convergents,
    denominator_reduced,
    evaluate_partial_quotients,
    expand_type3,
    reconstruct_from_remainder,
    tail_value,
    to_text,
    value,
)

x = Fraction(7, 3)
e = expand_type3(x, 2)
print(f"x = {x}, type III base 2: {to_text(e)}")

# Convergents home in on x from alternating sides, and consecutive pairs
# satisfy the determinant identity p_n q_{n-1} - q_n p_{n-1} =
# (-1)**(n-1) * b**(a_0 + ... + a_{n-1}).
convs = convergents(e)
print("\n n   p_n/q_n        error        determinant")
exponent = 0
for n, c in enumerate(convs):
    err = float(Fraction(c.p, c.q) - x)
    det = ""
    if n >= 1:
        exponent += e.terms[n - 1].a
        lhs = c.p * convs[n - 1].q - c.q * convs[n - 1].p
        rhs = (-1) ** (n - 1) * e.base**exponent
        det = f"{lhs}  (predicted (-1)**{n - 1} * {e.base}**{exponent} = {rhs})"
        assert lhs == rhs
    print(f" {n}   {str(Fraction(c.p, c.q)):10s}  {err:+.2e}   {det}")

# The remainder y_k is what is left to expand after peeling k terms.  Run
# the recursion by hand and feed each remainder back: the Moebius map
# built from two consecutive convergents reconstructs x exactly.
print("\nremainder replay:")
y = x
ys = [y]
for t in e.terms[:-1]:
    y = Fraction(e.base) ** t.a / (y - t.c * Fraction(e.base) ** t.a)
    ys.append(y)
for k in range(1, len(ys)):
    rebuilt = reconstruct_from_remainder(e, k, ys[k])
    print(f"  y_{k} = {ys[k]}   -> reconstructs {rebuilt} == x? {rebuilt == x}")

# tail_value computes those remainders for us, straight off the terms.
assert all(tail_value(e, k) == ys[k] for k in range(len(ys)))

# Any expansion can be rescaled so that every recursive numerator becomes
# 1 -- the denominator-reduced form.  Evaluating its partial quotients
# reproduces the same convergents.
print("\ndenominator-reduced partial quotients:")
pq = denominator_reduced(e)
print(f"  {pq}")
for n in range(len(pq)):
    approx = evaluate_partial_quotients(pq[: n + 1])
    print(f"  depth {n}: {approx}  == p_{n}/q_{n}? "
          f"{approx == Fraction(convs[n].p, convs[n].q)}")

assert value(e) == x
